#pragma once

// Executable property suites: randomized checks of the metatheory, plus the
// exhaustive bounded consistency search.

#include <cstdint>
#include <string>
#include <vector>

#include "phoml/generators.hpp"

namespace phoml {

struct PropertyFailure {
  std::uint64_t seed = 0;
  std::string description;
  std::string minimized;  // empty when no minimizer applies
};

struct PropertyVerdict {
  std::string name;
  int cases = 0;
  std::vector<PropertyFailure> failures;

  bool ok() const { return failures.empty(); }
  // "PROP <name> cases=<n> failures=<k>" plus one "FAIL seed=<s>" per failure.
  std::string render() const;
};

// Registered property names, in the order props runs them.
const std::vector<std::string>& registered_properties();

// Runs one registered property for `cases` cases derived from cfg.seed.
// Throws std::invalid_argument for unknown names.
PropertyVerdict run_property(const std::string& name, int cases, const GenConfig& cfg);

struct ConsistencyReport {
  int max_size = 0;
  long long proofs_enumerated = 0;
  std::vector<Proof> hits;  // closed proofs typed at bot; expected empty

  std::string render() const;
};

// Enumerates every closed proof up to max_size nodes and reports any whose
// inferred proposition is convertible to bot.
ConsistencyReport bounded_consistency_search(int max_size);

}  // namespace phoml
