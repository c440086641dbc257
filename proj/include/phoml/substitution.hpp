#pragma once

// Simultaneous capture-avoiding substitution and path substitution.
//
// Path substitution turns a term L and pointwise paths between two
// substitutions into a path between the two instances of L: if tau maps
// x to (P : M = N) componentwise, then  L{tau}  is a path from L[x:=M]
// to L[x:=N].  It is defined on terms only; the endpoint substitutions
// are bundled inside PathSubstitution so they cannot drift apart.

#include <map>
#include <set>
#include <string>

#include "phoml/syntax.hpp"

namespace phoml {

class Substitution {
 public:
  Substitution() = default;

  Substitution& set_term(const std::string& name, Term image);
  Substitution& set_proof(const std::string& name, Proof image);
  Substitution& set_path(const std::string& name, Path image);

  static Substitution term(const std::string& name, Term image);
  static Substitution proof(const std::string& name, Proof image);
  static Substitution path(const std::string& name, Path image);

  const Term* term_image(const std::string& name) const;
  const Proof* proof_image(const std::string& name) const;
  const Path* path_image(const std::string& name) const;

  bool empty() const { return terms_.empty() && proofs_.empty() && paths_.empty(); }

  const std::map<std::string, Term>& terms() const { return terms_; }
  const std::map<std::string, Proof>& proofs() const { return proofs_; }
  const std::map<std::string, Path>& paths() const { return paths_; }

 private:
  std::map<std::string, Term> terms_;
  std::map<std::string, Proof> proofs_;
  std::map<std::string, Path> paths_;
};

Term subst(const Term& t, const Substitution& s);
Proof subst(const Proof& p, const Substitution& s);
Path subst(const Path& p, const Substitution& s);
Equation subst(const Equation& eq, const Substitution& s);
Expr subst(const Expr& e, const Substitution& s);

// compose(s1, s2): the substitution equivalent to applying s1 and then s2.
// Maps z to subst(s1(z), s2) on dom(s1) and acts as s2 elsewhere.
Substitution compose(const Substitution& s1, const Substitution& s2);

// One binding of a path substitution: a path together with its endpoints.
struct PathBinding {
  Path path;
  Term left;
  Term right;
};

class PathSubstitution {
 public:
  PathSubstitution() = default;

  PathSubstitution& set(const std::string& term_var, PathBinding binding);
  static PathSubstitution single(const std::string& term_var, PathBinding binding);

  const PathBinding* lookup(const std::string& name) const;
  bool empty() const { return bindings_.empty(); }
  const std::map<std::string, PathBinding>& bindings() const { return bindings_; }

  // The bundled endpoint substitutions (term variables only).
  Substitution left_substitution() const;
  Substitution right_substitution() const;

 private:
  std::map<std::string, PathBinding> bindings_;
};

// L{tau}.  Defined on terms only; mapped variables become their paths,
// unmapped variables y become ref(y), bottom becomes ref(bot), applications
// become subscripted path applications carrying the endpoint instances, and
// lambdas become triple-lambdas over fresh variables.
Path path_subst(const Term& term, const PathSubstitution& tau);

// M{} -- the path from M to itself obtained from the empty path substitution.
// In general distinct from ref(M).
Path trivial_loop(const Term& term);

// The canonical closed inhabitant c_A of a type: bot at Omega, and
// \x:A.c_B at A -> B.
Term canonical_inhabitant(const Type& type);

}  // namespace phoml
