#include "phoml/substitution.hpp"

#include <stdexcept>

namespace phoml {

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

Substitution& Substitution::set_term(const std::string& name, Term image) {
  terms_.insert_or_assign(name, std::move(image));
  return *this;
}
Substitution& Substitution::set_proof(const std::string& name, Proof image) {
  proofs_.insert_or_assign(name, std::move(image));
  return *this;
}
Substitution& Substitution::set_path(const std::string& name, Path image) {
  paths_.insert_or_assign(name, std::move(image));
  return *this;
}

Substitution Substitution::term(const std::string& name, Term image) {
  Substitution s;
  s.set_term(name, std::move(image));
  return s;
}
Substitution Substitution::proof(const std::string& name, Proof image) {
  Substitution s;
  s.set_proof(name, std::move(image));
  return s;
}
Substitution Substitution::path(const std::string& name, Path image) {
  Substitution s;
  s.set_path(name, std::move(image));
  return s;
}

const Term* Substitution::term_image(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? nullptr : &it->second;
}
const Proof* Substitution::proof_image(const std::string& name) const {
  auto it = proofs_.find(name);
  return it == proofs_.end() ? nullptr : &it->second;
}
const Path* Substitution::path_image(const std::string& name) const {
  auto it = paths_.find(name);
  return it == paths_.end() ? nullptr : &it->second;
}

// Bound variables are indices, so images cannot be captured; the traversal
// just rewrites free occurrences.
Term subst(const Term& t, const Substitution& s) {
  const TermNode& n = t.node();
  if (const auto* f = std::get_if<TermFree>(&n.v)) {
    if (const Term* image = s.term_image(f->name)) return *image;
    return t;
  }
  if (const auto* i = std::get_if<TermImp>(&n.v))
    return Term::from_node({TermImp{subst(i->lhs, s), subst(i->rhs, s)}});
  if (const auto* l = std::get_if<TermLam>(&n.v))
    return Term::from_node({TermLam{l->hint, l->ann, subst(l->body, s)}});
  if (const auto* a = std::get_if<TermApp>(&n.v))
    return Term::from_node({TermApp{subst(a->fun, s), subst(a->arg, s)}});
  return t;
}

Proof subst(const Proof& p, const Substitution& s) {
  const ProofNode& n = p.node();
  if (const auto* f = std::get_if<ProofFree>(&n.v)) {
    if (const Proof* image = s.proof_image(f->name)) return *image;
    return p;
  }
  if (const auto* l = std::get_if<ProofLam>(&n.v))
    return Proof::from_node({ProofLam{l->hint, subst(l->ann, s), subst(l->body, s)}});
  if (const auto* a = std::get_if<ProofApp>(&n.v))
    return Proof::from_node({ProofApp{subst(a->fun, s), subst(a->arg, s)}});
  if (const auto* pl = std::get_if<ProofPlus>(&n.v))
    return Proof::from_node({ProofPlus{subst(pl->path, s)}});
  if (const auto* mi = std::get_if<ProofMinus>(&n.v))
    return Proof::from_node({ProofMinus{subst(mi->path, s)}});
  return p;
}

Path subst(const Path& p, const Substitution& s) {
  const PathNode& n = p.node();
  if (const auto* f = std::get_if<PathFree>(&n.v)) {
    if (const Path* image = s.path_image(f->name)) return *image;
    return p;
  }
  if (const auto* r = std::get_if<PathRef>(&n.v))
    return Path::from_node({PathRef{subst(r->term, s)}});
  if (const auto* st = std::get_if<PathImpStar>(&n.v))
    return Path::from_node({PathImpStar{subst(st->lhs, s), subst(st->rhs, s)}});
  if (const auto* u = std::get_if<PathUniv>(&n.v))
    return Path::from_node({PathUniv{subst(u->src, s), subst(u->tgt, s),
                                     subst(u->fwd, s), subst(u->bwd, s)}});
  if (const auto* t = std::get_if<PathTriLam>(&n.v))
    return Path::from_node(
        {PathTriLam{t->hint_e, t->hint_x, t->hint_y, t->ann, subst(t->body, s)}});
  if (const auto* a = std::get_if<PathAppNode>(&n.v))
    return Path::from_node({PathAppNode{subst(a->fun, s), subst(a->left, s),
                                        subst(a->right, s), subst(a->arg, s)}});
  return p;
}

Equation subst(const Equation& eq, const Substitution& s) {
  return Equation{subst(eq.lhs, s), eq.type, subst(eq.rhs, s)};
}

Expr subst(const Expr& e, const Substitution& s) {
  return std::visit([&](const auto& x) -> Expr { return subst(x, s); }, e);
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out = s2;
  for (const auto& [name, image] : s1.terms()) out.set_term(name, subst(image, s2));
  for (const auto& [name, image] : s1.proofs()) out.set_proof(name, subst(image, s2));
  for (const auto& [name, image] : s1.paths()) out.set_path(name, subst(image, s2));
  return out;
}

// ---------------------------------------------------------------------------
// Path substitution
// ---------------------------------------------------------------------------

PathSubstitution& PathSubstitution::set(const std::string& term_var, PathBinding binding) {
  bindings_.insert_or_assign(term_var, std::move(binding));
  return *this;
}

PathSubstitution PathSubstitution::single(const std::string& term_var, PathBinding binding) {
  PathSubstitution tau;
  tau.set(term_var, std::move(binding));
  return tau;
}

const PathBinding* PathSubstitution::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

Substitution PathSubstitution::left_substitution() const {
  Substitution s;
  for (const auto& [name, binding] : bindings_) s.set_term(name, binding.left);
  return s;
}

Substitution PathSubstitution::right_substitution() const {
  Substitution s;
  for (const auto& [name, binding] : bindings_) s.set_term(name, binding.right);
  return s;
}

namespace {

struct PathSubster {
  // Names that fresh variables must avoid; grows as binders are crossed.
  std::set<std::string> avoid;

  Path run(const Term& t, const PathSubstitution& tau) {
    const TermNode& n = t.node();
    if (const auto* f = std::get_if<TermFree>(&n.v)) {
      if (const PathBinding* binding = tau.lookup(f->name)) return binding->path;
      return Path::ref(t);
    }
    if (std::get_if<TermBottom>(&n.v)) return Path::ref(t);
    if (const auto* a = std::get_if<TermApp>(&n.v)) {
      Term left = subst(a->arg, tau.left_substitution());
      Term right = subst(a->arg, tau.right_substitution());
      return Path::app(run(a->fun, tau), std::move(left), std::move(right),
                       run(a->arg, tau));
    }
    if (const auto* i = std::get_if<TermImp>(&n.v))
      return Path::imp_star(run(i->lhs, tau), run(i->rhs, tau));
    if (const auto* l = std::get_if<TermLam>(&n.v)) {
      const std::string base = l->hint.empty() ? "x" : l->hint;
      std::string opened = fresh_name(base + "_0", avoid);
      avoid.insert(opened);
      std::string a_name = fresh_name(base, avoid);
      avoid.insert(a_name);
      std::string a_prime = fresh_name(base + "'", avoid);
      avoid.insert(a_prime);
      std::string e_name = fresh_name("e_" + base, avoid);
      avoid.insert(e_name);

      PathSubstitution extended = tau;
      extended.set(opened, PathBinding{Path::var(e_name), Term::var(a_name),
                                       Term::var(a_prime)});
      Path body = run(open_body(*l, Term::var(opened)), extended);
      return Path::tri_lam(e_name, a_name, a_prime, l->ann, std::move(body));
    }
    throw std::logic_error("path_subst: expression is not locally closed");
  }
};

void collect_term_names(const Term& t, std::set<std::string>& out) {
  for (const auto& name : free_vars(t).term_vars) out.insert(name);
}

}  // namespace

Path path_subst(const Term& term, const PathSubstitution& tau) {
  PathSubster subster;
  collect_term_names(term, subster.avoid);
  for (const auto& [name, binding] : tau.bindings()) {
    subster.avoid.insert(name);
    FreeVars fv = free_vars(binding.path);
    subster.avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
    subster.avoid.insert(fv.path_vars.begin(), fv.path_vars.end());
    collect_term_names(binding.left, subster.avoid);
    collect_term_names(binding.right, subster.avoid);
  }
  return subster.run(term, tau);
}

Path trivial_loop(const Term& term) { return path_subst(term, PathSubstitution{}); }

Term canonical_inhabitant(const Type& type) {
  if (type.is_omega()) return Term::bottom();
  return Term::lam("x", type.domain(), canonical_inhabitant(type.codomain()));
}

}  // namespace phoml
