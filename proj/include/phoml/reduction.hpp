#pragma once

// The call-by-name reduction relation: exhaustive one-step reducts, a
// deterministic normalizing strategy, bounded normalization and conversion.
//
// Congruence positions are exactly the head positions of the relation: the
// function position of applications, both operands of => and =>*, the path
// under ^+/^-, and the term under ref when it stands in applied position.
// There is no reduction under binders and no reduction of arguments.

#include <optional>
#include <string>
#include <vector>

#include "phoml/syntax.hpp"

namespace phoml {

inline constexpr int kDefaultFuel = 10000;   // CLI-facing default
inline constexpr int kPropertyFuel = 1000;   // default for property tests

// All one-step reducts, deduplicated up to alpha.
std::vector<Term> step_all(const Term& t);
std::vector<Proof> step_all(const Proof& p);
std::vector<Path> step_all(const Path& p);
std::vector<Expr> step_all(const Expr& e);

// One deterministic step: top-level redex rules first, then the designated
// head subexpression (left operand of =>/=>* before the right one).
// The rule name is the contracted redex rule; position is the dotted chain of
// congruence positions leading to it ("" for a top-level redex).
struct Step {
  Expr expr;
  std::string rule;
  std::string position;
};

std::optional<Step> step_cbn(const Expr& e);

enum class NormalStatus { NormalCanonical, NormalNeutral, NormalOther, FuelExhausted };

std::string to_string(NormalStatus status);

struct TraceEntry {
  std::string rule;
  std::string position;
  Expr after;
};

struct ReductionOutcome {
  Expr result;
  int steps = 0;
  NormalStatus status = NormalStatus::NormalOther;
  std::vector<TraceEntry> trace;  // populated only when requested
};

// Iterates step_cbn at most `fuel` times.  A Normal-* status means the result
// has no reducts at all; FuelExhausted is an outcome, not a fault.
ReductionOutcome reduce(const Expr& e, int fuel, bool want_trace = false);

// Term-only normalization (the term fragment of the relation).
ReductionOutcome normalize_term(const Term& t, int fuel);
Term normal_form_of_term(const ReductionOutcome& outcome);

// Conversion by normalize-and-compare.  nullopt when either side runs out of
// fuel, so incompleteness is never silent.
std::optional<bool> convertible(const Term& a, const Term& b, int fuel);

// Contractums of the top-level redex rules, shared with the parallel
// relation.  Bound proof variables in the built lambdas are freshened against
// the embedded components.
namespace rules {
Proof identity_proof(const Term& prop);  // \p:prop.p
Path impstar_ref_univ(const Term& phi, const PathUniv& u);
Path impstar_univ_ref(const PathUniv& u, const Term& chi);
Path impstar_univ_univ(const PathUniv& a, const PathUniv& b);
// ref(\x:A.M) @[left, right] arg  ->  M{x := arg : left = right}
Path ref_lam_app(const TermLam& lam, const Term& left, const Term& right,
                 const Path& arg);
}  // namespace rules

}  // namespace phoml
