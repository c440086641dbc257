#pragma once

// Random generation of raw and well-typed expressions, plus exhaustive
// enumeration of closed expressions by node count (modulo alpha).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "phoml/parser.hpp"
#include "phoml/substitution.hpp"
#include "phoml/syntax.hpp"
#include "phoml/typecheck.hpp"

namespace phoml {

struct GenConfig {
  std::uint64_t seed = 1;
  int size = 8;           // node budget per expression
  int context_depth = 3;  // declarations when generating contexts
  int leaf_bias = 2;      // relative weight of stopping at a leaf early
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int below(int n) {  // uniform in [0, n)
    return n <= 1 ? 0 : static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }
  bool chance(int numerator, int denominator) { return below(denominator) < numerator; }

  template <class T>
  const T& pick(const std::vector<T>& pool) {
    return pool[below(static_cast<int>(pool.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Raw generation: well-formed, possibly ill-typed, redex-rich
// ---------------------------------------------------------------------------

Type gen_raw_type(Rng& rng, int budget);
Term gen_raw_term(Rng& rng, int budget, int leaf_bias = 2);
Proof gen_raw_proof(Rng& rng, int budget, int leaf_bias = 2);
Path gen_raw_path(Rng& rng, int budget, int leaf_bias = 2);
Expr gen_raw_expr(Rng& rng, int budget, int leaf_bias = 2);

// The free variable pools used by the raw generators, as a context with
// placeholder classifiers (for reparsing printed output).
Context raw_variable_pool_context();

Substitution gen_raw_substitution(Rng& rng, int budget);
PathSubstitution gen_raw_path_substitution(Rng& rng, int budget);

// ---------------------------------------------------------------------------
// Typed generation: inverts one deduction rule per node
// ---------------------------------------------------------------------------

struct TypedSample {
  Expr expr;
  Classifier classifier;
};

// A context that is valid by construction.  With allow_term_vars false the
// result only declares proof and path variables (over closed terms).
Context gen_context(Rng& rng, const GenConfig& cfg, bool allow_term_vars);

// Generates an expression of the requested sort together with its stated
// classification; nullopt after bounded retries.  The result always passes
// verify_sample.
std::optional<TypedSample> gen_typed(ExprClass sort, const Context& ctx,
                                     const GenConfig& cfg);

// Generates a term of the requested type (falls back on the canonical
// inhabitant to close leaves).
Term gen_term_of_type(Rng& rng, const Context& ctx, const Type& type, int budget);

// Generates a proof of a stated proposition; nullopt when the bounded search
// finds none.
std::optional<Proof> gen_proof_of(Rng& rng, const Context& ctx, const Term& prop,
                                  int budget);

// Generates a path whose equation lives at the given type.
std::optional<std::pair<Path, Equation>> gen_path_at_type(Rng& rng, const Context& ctx,
                                                          const Type& type, int budget);

// Runs the typechecker on a sample against its stated classification.
bool verify_sample(const Context& ctx, const TypedSample& sample,
                   const CheckOptions& options);

// ---------------------------------------------------------------------------
// Exhaustive enumeration of closed expressions, modulo alpha
// ---------------------------------------------------------------------------

class ClosedEnumerator {
 public:
  const std::vector<Type>& types(int size);
  // Depth arguments are the number of enclosing binders per variable kind.
  const std::vector<Term>& terms(int size, int tdepth, int pdepth, int edepth);
  const std::vector<Proof>& proofs(int size, int tdepth, int pdepth, int edepth);
  const std::vector<Path>& paths(int size, int tdepth, int pdepth, int edepth);

 private:
  using Key = std::tuple<int, int, int, int>;
  std::map<int, std::vector<Type>> types_;
  std::map<Key, std::vector<Term>> terms_;
  std::map<Key, std::vector<Proof>> proofs_;
  std::map<Key, std::vector<Path>> paths_;
};

// All closed proofs with node count between 1 and max_size.
std::vector<Proof> enumerate_closed_proofs(int max_size);

}  // namespace phoml
