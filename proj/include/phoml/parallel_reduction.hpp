#pragma once

// Parallel one-step reduction: the simultaneous-contraction relation used to
// establish confluence, together with machine checks of its diamond property
// and of its relationship with plain one-step reduction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phoml/syntax.hpp"

namespace phoml {

struct ParallelSet {
  std::vector<Expr> elements;  // always contains the source (reflexivity)
  bool overflow = false;       // true when truncated at the cap
};

// {F : E |> F}, up to alpha, truncated with the overflow flag if it would
// exceed `cap` elements.
ParallelSet parallel_reducts(const Expr& e, std::size_t cap = 10000);

struct DiamondReport {
  enum class Verdict { Joined, CounterexampleCandidate };
  Expr source;
  Expr branch1, branch2;
  std::optional<Expr> join;  // present iff Joined
  Verdict verdict = Verdict::Joined;
};

struct DiamondCheck {
  std::vector<DiamondReport> reports;  // one per unordered pair of distinct reducts
  bool overflow = false;
};

// Searches, for every pair of distinct parallel reducts of E, a common
// one-step parallel reduct.
DiamondCheck check_diamond(const Expr& e, std::size_t cap = 10000);

struct RelateVerdict {
  bool step_all_contained = true;   // every one-step reduct is a parallel reduct
  bool parallel_reachable = true;   // every parallel reduct is ->*-reachable
  std::vector<Expr> missing;        // one-step reducts absent from |>
  std::vector<Expr> unreachable;    // parallel reducts not found by bounded search
  bool overflow = false;
  bool holds() const { return step_all_contained && parallel_reachable && !overflow; }
};

// Checks step_all(E) subset-of parallel_reducts(E) and that every parallel
// reduct of E is reached from E by a bounded breadth-first ->* search.
RelateVerdict relate_relations(const Expr& e, std::size_t cap = 10000);

// Bounded joinability in the plain relation: breadth-first search over the
// step_all graphs of both sides, to the given depth and node budget.
bool joinable(const Expr& a, const Expr& b, int depth = 8, std::size_t max_nodes = 10000);

// Line format for diamond verdicts: "DIAMOND <verdict> <size> <seed>".
std::string render_diamond_line(const DiamondReport& report, std::uint64_t seed);

}  // namespace phoml
