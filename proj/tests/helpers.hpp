#pragma once

// Shared test fixtures and independent oracles.  The oracles deliberately
// avoid the code paths they check: alpha-equivalence is re-decided by opening
// every binder with sequential canonical names, and path substitution is
// re-implemented clause by clause.

#include <string>

#include "phoml/parser.hpp"
#include "phoml/printer.hpp"
#include "phoml/reduction.hpp"
#include "phoml/substitution.hpp"
#include "phoml/syntax.hpp"

namespace phoml::testing {

inline Type omega() { return Type::omega(); }
inline Term bot() { return Term::bottom(); }

// x : Omega, y : Omega, e : x =[Omega] y  -- the working context of the
// extensionality computation example.
inline Context equivalence_context() {
  return Context{}
      .extended(TermDecl{"x", Type::omega()})
      .extended(TermDecl{"y", Type::omega()})
      .extended(PathDecl{"e", Equation{Term::var("x"), Type::omega(), Term::var("y")}});
}

// ---------------------------------------------------------------------------
// Alpha-equivalence oracle: canonical renaming before structural comparison
// ---------------------------------------------------------------------------

struct CanonicalRenamer {
  int counter = 0;

  std::string next() { return "_r" + std::to_string(counter++); }

  std::string run(const Type& t) {
    if (t.is_omega()) return "O";
    return "(-> " + run(t.domain()) + " " + run(t.codomain()) + ")";
  }

  std::string run(const Term& t) {
    if (const auto* f = as_free(t)) return "(tv " + f->name + ")";
    if (as_bottom(t)) return "(bot)";
    if (const auto* i = as_imp(t)) return "(imp " + run(i->lhs) + " " + run(i->rhs) + ")";
    if (const auto* l = as_lam(t)) {
      std::string name = next();
      return "(lam " + name + " " + run(l->ann) + " " +
             run(open_body(*l, Term::var(name))) + ")";
    }
    if (const auto* a = as_app(t)) return "(app " + run(a->fun) + " " + run(a->arg) + ")";
    return "(bad-term)";
  }

  std::string run(const Proof& p) {
    if (const auto* f = as_free(p)) return "(pv " + f->name + ")";
    if (const auto* l = as_lam(p)) {
      std::string name = next();
      return "(plam " + name + " " + run(l->ann) + " " +
             run(open_body(*l, Proof::var(name))) + ")";
    }
    if (const auto* a = as_app(p)) return "(papp " + run(a->fun) + " " + run(a->arg) + ")";
    if (const auto* pl = as_plus(p)) return "(plus " + run(pl->path) + ")";
    if (const auto* mi = as_minus(p)) return "(minus " + run(mi->path) + ")";
    return "(bad-proof)";
  }

  std::string run(const Path& p) {
    if (const auto* f = as_free(p)) return "(ev " + f->name + ")";
    if (const auto* r = as_ref(p)) return "(ref " + run(r->term) + ")";
    if (const auto* s = as_imp_star(p))
      return "(impstar " + run(s->lhs) + " " + run(s->rhs) + ")";
    if (const auto* u = as_univ(p))
      return "(univ " + run(u->src) + " " + run(u->tgt) + " " + run(u->fwd) + " " +
             run(u->bwd) + ")";
    if (const auto* t = as_tri_lam(p)) {
      std::string e = next(), x = next(), y = next();
      return "(trilam " + e + " " + x + " " + y + " " + run(t->ann) + " " +
             run(open_body(*t, Path::var(e), Term::var(x), Term::var(y))) + ")";
    }
    if (const auto* a = as_path_app(p))
      return "(pathapp " + run(a->fun) + " " + run(a->left) + " " + run(a->right) +
             " " + run(a->arg) + ")";
    return "(bad-path)";
  }
};

template <class E>
std::string canonical_form(const E& e) {
  CanonicalRenamer renamer;
  return renamer.run(e);
}

inline std::string canonical_form(const Expr& e) {
  return std::visit([](const auto& x) { return canonical_form(x); }, e);
}

// ---------------------------------------------------------------------------
// Path substitution oracle: the definition transcribed clause by clause
// ---------------------------------------------------------------------------

struct PathSubstOracle {
  int counter = 0;

  std::string next(const char* base) {
    return std::string("_o") + base + std::to_string(counter++);
  }

  Path run(const Term& term, const PathSubstitution& tau) {
    if (const auto* f = as_free(term)) {
      if (const PathBinding* binding = tau.lookup(f->name)) return binding->path;
      return Path::ref(term);  // unmapped variable
    }
    if (as_bottom(term)) return Path::ref(Term::bottom());
    if (const auto* a = as_app(term)) {
      return Path::app(run(a->fun, tau), subst(a->arg, tau.left_substitution()),
                       subst(a->arg, tau.right_substitution()), run(a->arg, tau));
    }
    if (const auto* i = as_imp(term))
      return Path::imp_star(run(i->lhs, tau), run(i->rhs, tau));
    const auto* l = as_lam(term);
    std::string opened = next("y");
    std::string a_name = next("a");
    std::string a_prime = next("b");
    std::string e_name = next("e");
    PathSubstitution extended = tau;
    extended.set(opened,
                 PathBinding{Path::var(e_name), Term::var(a_name), Term::var(a_prime)});
    return Path::tri_lam(e_name, a_name, a_prime, l->ann,
                         run(open_body(*l, Term::var(opened)), extended));
  }
};

inline Path oracle_path_subst(const Term& term, const PathSubstitution& tau) {
  PathSubstOracle oracle;
  return oracle.run(term, tau);
}

}  // namespace phoml::testing
