#include "phoml/printer.hpp"

#include <set>

namespace phoml {

namespace {

// Precedence levels, loosest binders first.
constexpr int kLevelLam = 0;      // \x:A. M   and   lll e : x =[A] y . P
constexpr int kLevelImp = 1;      // =>  and  =>*
constexpr int kLevelApp = 2;      // juxtaposition and @[M, N]
constexpr int kLevelPostfix = 3;  // ^+ ^-
constexpr int kLevelAtom = 4;

void type_to(const Type& t, int min_level, std::string& out) {
  if (t.is_omega()) {
    out += "Omega";
    return;
  }
  bool parens = min_level > kLevelLam;
  if (parens) out += '(';
  type_to(t.domain(), kLevelImp, out);
  out += " -> ";
  type_to(t.codomain(), kLevelLam, out);
  if (parens) out += ')';
}

struct Printer {
  std::set<std::string> scope;  // names visible at the current position

  std::string pick(const std::string& hint, const char* fallback, const FreeVars& fv) {
    std::set<std::string> avoid = scope;
    avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
    avoid.insert(fv.proof_vars.begin(), fv.proof_vars.end());
    avoid.insert(fv.path_vars.begin(), fv.path_vars.end());
    return fresh_name(hint.empty() ? fallback : hint, avoid);
  }

  void run(const Term& t, int min_level, std::string& out) {
    if (const auto* b = as_bound(t)) {
      out += "#" + std::to_string(b->index);  // not reachable from locally closed input
      return;
    }
    if (const auto* f = as_free(t)) {
      out += f->name;
      return;
    }
    if (as_bottom(t)) {
      out += "bot";
      return;
    }
    if (const auto* i = as_imp(t)) {
      bool parens = min_level > kLevelImp;
      if (parens) out += '(';
      run(i->lhs, kLevelApp, out);
      out += " => ";
      run(i->rhs, kLevelLam, out);
      if (parens) out += ')';
      return;
    }
    if (const auto* l = as_lam(t)) {
      bool parens = min_level > kLevelLam;
      if (parens) out += '(';
      std::string x = pick(l->hint, "x", free_vars(l->body));
      out += "\\" + x + ":";
      type_to(l->ann, kLevelLam, out);
      out += ". ";
      scope.insert(x);
      run(open_body(*l, Term::var(x)), kLevelLam, out);
      scope.erase(x);
      if (parens) out += ')';
      return;
    }
    const auto* a = as_app(t);
    bool parens = min_level > kLevelApp;
    if (parens) out += '(';
    run(a->fun, kLevelApp, out);
    out += ' ';
    run(a->arg, kLevelPostfix, out);
    if (parens) out += ')';
  }

  void run(const Proof& p, int min_level, std::string& out) {
    if (const auto* b = as_bound(p)) {
      out += "#" + std::to_string(b->index);
      return;
    }
    if (const auto* f = as_free(p)) {
      out += f->name;
      return;
    }
    if (const auto* l = as_lam(p)) {
      bool parens = min_level > kLevelLam;
      if (parens) out += '(';
      std::string name = pick(l->hint, "p", free_vars(l->body));
      out += "\\" + name + ":";
      run(l->ann, kLevelLam, out);
      out += ". ";
      scope.insert(name);
      run(open_body(*l, Proof::var(name)), kLevelLam, out);
      scope.erase(name);
      if (parens) out += ')';
      return;
    }
    if (const auto* a = as_app(p)) {
      bool parens = min_level > kLevelApp;
      if (parens) out += '(';
      run(a->fun, kLevelApp, out);
      out += ' ';
      run(a->arg, kLevelPostfix, out);
      if (parens) out += ')';
      return;
    }
    if (const auto* pl = as_plus(p)) {
      run(pl->path, kLevelPostfix, out);
      out += "^+";
      return;
    }
    const auto* mi = as_minus(p);
    run(mi->path, kLevelPostfix, out);
    out += "^-";
  }

  void run(const Path& p, int min_level, std::string& out) {
    if (const auto* b = as_bound(p)) {
      out += "#" + std::to_string(b->index);
      return;
    }
    if (const auto* f = as_free(p)) {
      out += f->name;
      return;
    }
    if (const auto* r = as_ref(p)) {
      out += "ref(";
      run(r->term, kLevelLam, out);
      out += ')';
      return;
    }
    if (const auto* s = as_imp_star(p)) {
      bool parens = min_level > kLevelImp;
      if (parens) out += '(';
      run(s->lhs, kLevelApp, out);
      out += " =>* ";
      run(s->rhs, kLevelLam, out);
      if (parens) out += ')';
      return;
    }
    if (const auto* u = as_univ(p)) {
      out += "univ(";
      run(u->src, kLevelLam, out);
      out += ", ";
      run(u->tgt, kLevelLam, out);
      out += ", ";
      run(u->fwd, kLevelLam, out);
      out += ", ";
      run(u->bwd, kLevelLam, out);
      out += ')';
      return;
    }
    if (const auto* t = as_tri_lam(p)) {
      bool parens = min_level > kLevelLam;
      if (parens) out += '(';
      FreeVars fv = free_vars(t->body);
      std::string e = pick(t->hint_e, "e", fv);
      scope.insert(e);
      std::string x = pick(t->hint_x, "x", fv);
      scope.insert(x);
      std::string y = pick(t->hint_y, "y", fv);
      scope.insert(y);
      out += "lll " + e + " : " + x + " =[";
      type_to(t->ann, kLevelLam, out);
      out += "] " + y + " . ";
      run(open_body(*t, Path::var(e), Term::var(x), Term::var(y)), kLevelLam, out);
      scope.erase(e);
      scope.erase(x);
      scope.erase(y);
      if (parens) out += ')';
      return;
    }
    const auto* a = as_path_app(p);
    bool parens = min_level > kLevelApp;
    if (parens) out += '(';
    run(a->fun, kLevelApp, out);
    out += " @[";
    run(a->left, kLevelLam, out);
    out += ", ";
    run(a->right, kLevelLam, out);
    out += "] ";
    run(a->arg, kLevelPostfix, out);
    if (parens) out += ')';
  }
};

}  // namespace

std::string print(const Type& type) {
  std::string out;
  type_to(type, kLevelLam, out);
  return out;
}

std::string print(const Term& term) {
  std::string out;
  Printer{}.run(term, kLevelLam, out);
  return out;
}

std::string print(const Proof& proof) {
  std::string out;
  Printer{}.run(proof, kLevelLam, out);
  return out;
}

std::string print(const Path& path) {
  std::string out;
  Printer{}.run(path, kLevelLam, out);
  return out;
}

std::string print(const Equation& eq) {
  std::string out;
  Printer printer;
  printer.run(eq.lhs, kLevelImp, out);
  out += " =[";
  type_to(eq.type, kLevelLam, out);
  out += "] ";
  printer.run(eq.rhs, kLevelImp, out);
  return out;
}

std::string print(const Expr& expr) {
  return std::visit([](const auto& x) { return print(x); }, expr);
}

}  // namespace phoml
