#include "phoml/reduction.hpp"

#include <set>
#include <utility>

#include "phoml/substitution.hpp"

namespace phoml {

namespace {

std::pair<std::string, std::string> fresh_pq(std::initializer_list<const Proof*> used) {
  std::set<std::string> avoid;
  for (const Proof* p : used) {
    FreeVars fv = free_vars(*p);
    avoid.insert(fv.proof_vars.begin(), fv.proof_vars.end());
  }
  std::string p = fresh_name("p", avoid);
  avoid.insert(p);
  std::string q = fresh_name("q", avoid);
  return {p, q};
}

}  // namespace

namespace rules {

Proof identity_proof(const Term& prop) {
  return Proof::lam("p", prop, Proof::var("p"));
}

// ref(phi) =>* univ(psi, chi, d, e)
//   -> univ(phi=>psi, phi=>chi, \p.\q. d (p q), \p.\q. e (p q))
Path impstar_ref_univ(const Term& phi, const PathUniv& u) {
  auto [p, q] = fresh_pq({&u.fwd, &u.bwd});
  auto component = [&](const Term& from, const Proof& through) {
    return Proof::lam(p, Term::imp(phi, from),
                      Proof::lam(q, phi,
                                 Proof::app(through, Proof::app(Proof::var(p),
                                                                Proof::var(q)))));
  };
  return Path::univ(Term::imp(phi, u.src), Term::imp(phi, u.tgt),
                    component(u.src, u.fwd), component(u.tgt, u.bwd));
}

// univ(phi, psi, d, e) =>* ref(chi)
//   -> univ(phi=>chi, psi=>chi, \p.\q. p (e q), \p.\q. p (d q))
Path impstar_univ_ref(const PathUniv& u, const Term& chi) {
  auto [p, q] = fresh_pq({&u.fwd, &u.bwd});
  auto component = [&](const Term& from, const Term& via, const Proof& through) {
    return Proof::lam(
        p, Term::imp(from, chi),
        Proof::lam(q, via,
                   Proof::app(Proof::var(p), Proof::app(through, Proof::var(q)))));
  };
  return Path::univ(Term::imp(u.src, chi), Term::imp(u.tgt, chi),
                    component(u.src, u.tgt, u.bwd), component(u.tgt, u.src, u.fwd));
}

// univ(phi, psi, d, e) =>* univ(phi', psi', d', e')
//   -> univ(phi=>phi', psi=>psi', \p.\q. d' (p (e q)), \p.\q. e' (p (d q)))
Path impstar_univ_univ(const PathUniv& a, const PathUniv& b) {
  auto [p, q] = fresh_pq({&a.fwd, &a.bwd, &b.fwd, &b.bwd});
  auto component = [&](const Term& from_a, const Term& from_b, const Term& via,
                       const Proof& outer, const Proof& inner) {
    return Proof::lam(
        p, Term::imp(from_a, from_b),
        Proof::lam(q, via,
                   Proof::app(outer, Proof::app(Proof::var(p),
                                                Proof::app(inner, Proof::var(q))))));
  };
  return Path::univ(Term::imp(a.src, b.src), Term::imp(a.tgt, b.tgt),
                    component(a.src, b.src, a.tgt, b.fwd, a.bwd),
                    component(a.tgt, b.tgt, a.src, b.bwd, a.fwd));
}

// ref(\x:A.M) @[N, N'] Q  ->  M{x := Q : N = N'}
Path ref_lam_app(const TermLam& lam, const Term& left, const Term& right,
                        const Path& arg) {
  std::set<std::string> avoid = free_vars(lam.body).term_vars;
  {
    FreeVars fv = free_vars(arg);
    avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
  }
  for (const auto& n : free_vars(left).term_vars) avoid.insert(n);
  for (const auto& n : free_vars(right).term_vars) avoid.insert(n);
  std::string x = fresh_name(lam.hint.empty() ? "x" : lam.hint, avoid);
  PathSubstitution tau =
      PathSubstitution::single(x, PathBinding{arg, left, right});
  return path_subst(open_body(lam, Term::var(x)), tau);
}

}  // namespace rules

namespace {

bool rigid_path_head(const Path& p) { return as_ref(p) || as_univ(p); }

void push_unique(std::vector<Term>& out, std::set<std::string>& seen, Term t) {
  if (seen.insert(alpha_key(t)).second) out.push_back(std::move(t));
}
void push_unique(std::vector<Proof>& out, std::set<std::string>& seen, Proof p) {
  if (seen.insert(alpha_key(p)).second) out.push_back(std::move(p));
}
void push_unique(std::vector<Path>& out, std::set<std::string>& seen, Path p) {
  if (seen.insert(alpha_key(p)).second) out.push_back(std::move(p));
}

}  // namespace

// ---------------------------------------------------------------------------
// step_all
// ---------------------------------------------------------------------------

std::vector<Term> step_all(const Term& t) {
  std::vector<Term> out;
  std::set<std::string> seen;
  if (const auto* a = as_app(t)) {
    if (const auto* l = as_lam(a->fun)) push_unique(out, seen, open_body(*l, a->arg));
    for (const Term& fun : step_all(a->fun))
      push_unique(out, seen, Term::app(fun, a->arg));
  } else if (const auto* i = as_imp(t)) {
    for (const Term& lhs : step_all(i->lhs))
      push_unique(out, seen, Term::imp(lhs, i->rhs));
    for (const Term& rhs : step_all(i->rhs))
      push_unique(out, seen, Term::imp(i->lhs, rhs));
  }
  return out;
}

std::vector<Proof> step_all(const Proof& p) {
  std::vector<Proof> out;
  std::set<std::string> seen;
  if (const auto* a = as_app(p)) {
    if (const auto* l = as_lam(a->fun)) push_unique(out, seen, open_body(*l, a->arg));
    for (const Proof& fun : step_all(a->fun))
      push_unique(out, seen, Proof::app(fun, a->arg));
  } else if (const auto* pl = as_plus(p)) {
    if (const auto* r = as_ref(pl->path))
      push_unique(out, seen, rules::identity_proof(r->term));
    if (const auto* u = as_univ(pl->path)) push_unique(out, seen, u->fwd);
    for (const Path& path : step_all(pl->path))
      push_unique(out, seen, Proof::plus(path));
  } else if (const auto* mi = as_minus(p)) {
    if (const auto* r = as_ref(mi->path))
      push_unique(out, seen, rules::identity_proof(r->term));
    if (const auto* u = as_univ(mi->path)) push_unique(out, seen, u->bwd);
    for (const Path& path : step_all(mi->path))
      push_unique(out, seen, Proof::minus(path));
  }
  return out;
}

std::vector<Path> step_all(const Path& p) {
  std::vector<Path> out;
  std::set<std::string> seen;
  if (const auto* s = as_imp_star(p)) {
    const auto* lr = as_ref(s->lhs);
    const auto* lu = as_univ(s->lhs);
    const auto* rr = as_ref(s->rhs);
    const auto* ru = as_univ(s->rhs);
    if (lr && rr) push_unique(out, seen, Path::ref(Term::imp(lr->term, rr->term)));
    if (lr && ru) push_unique(out, seen, rules::impstar_ref_univ(lr->term, *ru));
    if (lu && rr) push_unique(out, seen, rules::impstar_univ_ref(*lu, rr->term));
    if (lu && ru) push_unique(out, seen, rules::impstar_univ_univ(*lu, *ru));
    for (const Path& lhs : step_all(s->lhs))
      push_unique(out, seen, Path::imp_star(lhs, s->rhs));
    for (const Path& rhs : step_all(s->rhs))
      push_unique(out, seen, Path::imp_star(s->lhs, rhs));
  } else if (const auto* a = as_path_app(p)) {
    if (const auto* tri = as_tri_lam(a->fun))
      push_unique(out, seen, open_body(*tri, a->arg, a->left, a->right));
    if (const auto* r = as_ref(a->fun)) {
      if (const auto* l = as_lam(r->term))
        push_unique(out, seen, rules::ref_lam_app(*l, a->left, a->right, a->arg));
      for (const Term& inner : step_all(r->term))
        push_unique(out, seen,
                    Path::app(Path::ref(inner), a->left, a->right, a->arg));
    }
    for (const Path& fun : step_all(a->fun))
      push_unique(out, seen, Path::app(fun, a->left, a->right, a->arg));
  }
  return out;
}

std::vector<Expr> step_all(const Expr& e) {
  std::vector<Expr> out;
  std::visit(
      [&](const auto& x) {
        for (auto& reduct : step_all(x)) out.push_back(std::move(reduct));
      },
      e);
  return out;
}

// ---------------------------------------------------------------------------
// step_cbn
// ---------------------------------------------------------------------------

namespace {

std::string prepend(const char* segment, const std::string& position) {
  if (position.empty()) return segment;
  return std::string(segment) + "." + position;
}

std::optional<Step> cbn_term(const Term& t);
std::optional<Step> cbn_proof(const Proof& p);
std::optional<Step> cbn_path(const Path& p);

std::optional<Step> cbn_term(const Term& t) {
  if (const auto* a = as_app(t)) {
    if (const auto* l = as_lam(a->fun))
      return Step{Expr{open_body(*l, a->arg)}, "beta", ""};
    if (auto s = cbn_term(a->fun))
      return Step{Expr{Term::app(std::get<Term>(s->expr), a->arg)}, s->rule,
                  prepend("fun", s->position)};
    return std::nullopt;
  }
  if (const auto* i = as_imp(t)) {
    if (auto s = cbn_term(i->lhs))
      return Step{Expr{Term::imp(std::get<Term>(s->expr), i->rhs)}, s->rule,
                  prepend("lhs", s->position)};
    if (auto s = cbn_term(i->rhs))
      return Step{Expr{Term::imp(i->lhs, std::get<Term>(s->expr))}, s->rule,
                  prepend("rhs", s->position)};
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Step> cbn_proof(const Proof& p) {
  if (const auto* a = as_app(p)) {
    if (const auto* l = as_lam(a->fun))
      return Step{Expr{open_body(*l, a->arg)}, "beta-proof", ""};
    if (auto s = cbn_proof(a->fun))
      return Step{Expr{Proof::app(std::get<Proof>(s->expr), a->arg)}, s->rule,
                  prepend("fun", s->position)};
    return std::nullopt;
  }
  if (const auto* pl = as_plus(p)) {
    if (const auto* r = as_ref(pl->path))
      return Step{Expr{rules::identity_proof(r->term)}, "ref-plus", ""};
    if (const auto* u = as_univ(pl->path)) return Step{Expr{u->fwd}, "univ-plus", ""};
    if (auto s = cbn_path(pl->path))
      return Step{Expr{Proof::plus(std::get<Path>(s->expr))}, s->rule,
                  prepend("path", s->position)};
    return std::nullopt;
  }
  if (const auto* mi = as_minus(p)) {
    if (const auto* r = as_ref(mi->path))
      return Step{Expr{rules::identity_proof(r->term)}, "ref-minus", ""};
    if (const auto* u = as_univ(mi->path)) return Step{Expr{u->bwd}, "univ-minus", ""};
    if (auto s = cbn_path(mi->path))
      return Step{Expr{Proof::minus(std::get<Path>(s->expr))}, s->rule,
                  prepend("path", s->position)};
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Step> cbn_path(const Path& p) {
  if (const auto* s = as_imp_star(p)) {
    if (rigid_path_head(s->lhs) && rigid_path_head(s->rhs)) {
      const auto* lr = as_ref(s->lhs);
      const auto* lu = as_univ(s->lhs);
      const auto* rr = as_ref(s->rhs);
      const auto* ru = as_univ(s->rhs);
      if (lr && rr)
        return Step{Expr{Path::ref(Term::imp(lr->term, rr->term))}, "impstar-ref-ref",
                    ""};
      if (lr && ru)
        return Step{Expr{rules::impstar_ref_univ(lr->term, *ru)}, "impstar-ref-univ", ""};
      if (lu && rr)
        return Step{Expr{rules::impstar_univ_ref(*lu, rr->term)}, "impstar-univ-ref", ""};
      return Step{Expr{rules::impstar_univ_univ(*lu, *ru)}, "impstar-univ-univ", ""};
    }
    if (auto st = cbn_path(s->lhs))
      return Step{Expr{Path::imp_star(std::get<Path>(st->expr), s->rhs)}, st->rule,
                  prepend("lhs", st->position)};
    if (auto st = cbn_path(s->rhs))
      return Step{Expr{Path::imp_star(s->lhs, std::get<Path>(st->expr))}, st->rule,
                  prepend("rhs", st->position)};
    return std::nullopt;
  }
  if (const auto* a = as_path_app(p)) {
    if (const auto* tri = as_tri_lam(a->fun))
      return Step{Expr{open_body(*tri, a->arg, a->left, a->right)}, "beta-tri", ""};
    if (const auto* r = as_ref(a->fun)) {
      if (const auto* l = as_lam(r->term))
        return Step{Expr{rules::ref_lam_app(*l, a->left, a->right, a->arg)},
                    "ref-lam-app", ""};
      if (auto s = cbn_term(r->term))
        return Step{Expr{Path::app(Path::ref(std::get<Term>(s->expr)), a->left,
                                   a->right, a->arg)},
                    s->rule, prepend("fun", prepend("ref", s->position))};
      return std::nullopt;
    }
    if (auto s = cbn_path(a->fun))
      return Step{Expr{Path::app(std::get<Path>(s->expr), a->left, a->right, a->arg)},
                  s->rule, prepend("fun", s->position)};
    return std::nullopt;
  }
  return std::nullopt;
}

NormalStatus classify_normal(const Expr& e) {
  if (classify_canonical(e) != CanonicalClass::NotCanonical)
    return NormalStatus::NormalCanonical;
  if (classify_neutral(e)) return NormalStatus::NormalNeutral;
  return NormalStatus::NormalOther;
}

}  // namespace

std::optional<Step> step_cbn(const Expr& e) {
  if (const auto* t = std::get_if<Term>(&e)) return cbn_term(*t);
  if (const auto* p = std::get_if<Proof>(&e)) return cbn_proof(*p);
  return cbn_path(std::get<Path>(e));
}

// ---------------------------------------------------------------------------
// reduce / normalize / convertible
// ---------------------------------------------------------------------------

std::string to_string(NormalStatus status) {
  switch (status) {
    case NormalStatus::NormalCanonical: return "normal-canonical";
    case NormalStatus::NormalNeutral: return "normal-neutral";
    case NormalStatus::NormalOther: return "normal-other";
    case NormalStatus::FuelExhausted: return "fuel-exhausted";
  }
  return "unknown";
}

ReductionOutcome reduce(const Expr& e, int fuel, bool want_trace) {
  ReductionOutcome outcome{e};
  for (int i = 0; i < fuel; ++i) {
    auto step = step_cbn(outcome.result);
    if (!step) {
      outcome.status = classify_normal(outcome.result);
      return outcome;
    }
    outcome.result = step->expr;
    outcome.steps += 1;
    if (want_trace) outcome.trace.push_back({step->rule, step->position, step->expr});
  }
  outcome.status = step_cbn(outcome.result) ? NormalStatus::FuelExhausted
                                            : classify_normal(outcome.result);
  return outcome;
}

ReductionOutcome normalize_term(const Term& t, int fuel) {
  return reduce(Expr{t}, fuel);
}

Term normal_form_of_term(const ReductionOutcome& outcome) {
  return std::get<Term>(outcome.result);
}

std::optional<bool> convertible(const Term& a, const Term& b, int fuel) {
  ReductionOutcome ra = normalize_term(a, fuel);
  if (ra.status == NormalStatus::FuelExhausted) return std::nullopt;
  ReductionOutcome rb = normalize_term(b, fuel);
  if (rb.status == NormalStatus::FuelExhausted) return std::nullopt;
  return alpha_equal(ra.result, rb.result);
}

}  // namespace phoml
