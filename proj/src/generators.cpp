#include "phoml/generators.hpp"

#include <utility>

#include "phoml/reduction.hpp"
#include "phoml/substitution.hpp"

namespace phoml {

namespace {

const std::vector<std::string>& term_pool() {
  static const std::vector<std::string> pool = {"x", "y", "z", "f"};
  return pool;
}
const std::vector<std::string>& proof_pool() {
  static const std::vector<std::string> pool = {"p", "q"};
  return pool;
}
const std::vector<std::string>& path_pool() {
  static const std::vector<std::string> pool = {"e", "ee"};
  return pool;
}

int type_size(const Type& t) {
  return t.is_omega() ? 1 : 1 + type_size(t.domain()) + type_size(t.codomain());
}

}  // namespace

// ---------------------------------------------------------------------------
// Raw generation
// ---------------------------------------------------------------------------

Type gen_raw_type(Rng& rng, int budget) {
  if (budget < 3 || rng.chance(2, 3)) return Type::omega();
  int left = 1 + rng.below(budget - 2);
  return Type::arrow(gen_raw_type(rng, left), gen_raw_type(rng, budget - 1 - left));
}

Term gen_raw_term(Rng& rng, int budget, int leaf_bias) {
  if (budget <= 1 || rng.chance(leaf_bias, leaf_bias + 8)) {
    if (rng.chance(1, 3)) return Term::bottom();
    return Term::var(rng.pick(term_pool()));
  }
  switch (rng.below(4)) {
    case 0: {  // implication
      if (budget < 3) return gen_raw_term(rng, 1);
      int left = 1 + rng.below(budget - 2);
      return Term::imp(gen_raw_term(rng, left), gen_raw_term(rng, budget - 1 - left));
    }
    case 1: {  // lambda; binder names reuse the pool, capturing occurrences
      if (budget < 3) return gen_raw_term(rng, 1);
      Type ann = gen_raw_type(rng, std::min(3, budget - 2));
      return Term::lam(rng.pick(term_pool()), ann,
                       gen_raw_term(rng, budget - 1 - type_size(ann)));
    }
    case 2: {  // application, biased toward beta redexes
      if (budget < 3) return gen_raw_term(rng, 1);
      int left = 1 + rng.below(budget - 2);
      Term fun = rng.chance(1, 2) && left >= 3
                     ? Term::lam(rng.pick(term_pool()), Type::omega(),
                                 gen_raw_term(rng, left - 2))
                     : gen_raw_term(rng, left);
      return Term::app(fun, gen_raw_term(rng, budget - 1 - left));
    }
    default:
      return gen_raw_term(rng, 1);
  }
}

Proof gen_raw_proof(Rng& rng, int budget, int leaf_bias) {
  if (budget <= 1 || rng.chance(leaf_bias, leaf_bias + 8))
    return Proof::var(rng.pick(proof_pool()));
  switch (rng.below(5)) {
    case 0: {  // proof lambda
      if (budget < 3) return gen_raw_proof(rng, 1);
      Term ann = gen_raw_term(rng, std::min(3, budget - 2));
      return Proof::lam(rng.pick(proof_pool()), ann, gen_raw_proof(rng, budget - 2));
    }
    case 1: {  // application, biased toward beta redexes
      if (budget < 3) return gen_raw_proof(rng, 1);
      int left = 1 + rng.below(budget - 2);
      Proof fun = rng.chance(1, 2) && left >= 3
                      ? Proof::lam(rng.pick(proof_pool()), Term::bottom(),
                                   gen_raw_proof(rng, left - 2))
                      : gen_raw_proof(rng, left);
      return Proof::app(fun, gen_raw_proof(rng, budget - 1 - left));
    }
    case 2:
      return Proof::plus(gen_raw_path(rng, budget - 1));
    case 3:
      return Proof::minus(gen_raw_path(rng, budget - 1));
    default:
      return gen_raw_proof(rng, 1);
  }
}

Path gen_raw_path(Rng& rng, int budget, int leaf_bias) {
  if (budget <= 1 || rng.chance(leaf_bias, leaf_bias + 8))
    return Path::var(rng.pick(path_pool()));
  switch (rng.below(6)) {
    case 0:
      return Path::ref(gen_raw_term(rng, budget - 1));
    case 1: {  // =>* with operands biased toward ref/univ heads
      if (budget < 3) return gen_raw_path(rng, 1);
      int left = 1 + rng.below(budget - 2);
      auto operand = [&](int b) {
        if (b >= 2 && rng.chance(2, 3)) return Path::ref(gen_raw_term(rng, b - 1));
        return gen_raw_path(rng, b);
      };
      return Path::imp_star(operand(left), operand(budget - 1 - left));
    }
    case 2: {  // univ
      if (budget < 5) return gen_raw_path(rng, 1);
      int share = (budget - 1) / 4;
      return Path::univ(gen_raw_term(rng, share), gen_raw_term(rng, share),
                        gen_raw_proof(rng, share),
                        gen_raw_proof(rng, budget - 1 - 3 * share));
    }
    case 3: {  // triple lambda
      if (budget < 4) return gen_raw_path(rng, 1);
      const std::string& x = term_pool()[0];
      const std::string& y = term_pool()[1];
      return Path::tri_lam(rng.pick(path_pool()), x, y, gen_raw_type(rng, 2),
                           gen_raw_path(rng, budget - 2));
    }
    case 4: {  // path application, biased toward beta-tri / ref-lam redexes
      if (budget < 5) return gen_raw_path(rng, 1);
      int fun_budget = 1 + rng.below(budget - 4);
      Path fun = [&] {
        int roll = rng.below(3);
        if (roll == 0 && fun_budget >= 4) {
          const std::string& x = term_pool()[0];
          const std::string& y = term_pool()[1];
          return Path::tri_lam(rng.pick(path_pool()), x, y, Type::omega(),
                               gen_raw_path(rng, fun_budget - 2));
        }
        if (roll == 1 && fun_budget >= 4)
          return Path::ref(Term::lam(rng.pick(term_pool()), Type::omega(),
                                     gen_raw_term(rng, fun_budget - 3)));
        return gen_raw_path(rng, fun_budget);
      }();
      int rest = budget - 1 - fun_budget;
      int left = std::max(1, rest / 3);
      int right = std::max(1, (rest - left) / 2);
      int arg = std::max(1, rest - left - right);
      return Path::app(fun, gen_raw_term(rng, left), gen_raw_term(rng, right),
                       gen_raw_path(rng, arg));
    }
    default:
      return gen_raw_path(rng, 1);
  }
}

Expr gen_raw_expr(Rng& rng, int budget, int leaf_bias) {
  switch (rng.below(3)) {
    case 0: return Expr{gen_raw_term(rng, budget, leaf_bias)};
    case 1: return Expr{gen_raw_proof(rng, budget, leaf_bias)};
    default: return Expr{gen_raw_path(rng, budget, leaf_bias)};
  }
}

Context raw_variable_pool_context() {
  Context ctx;
  for (const std::string& name : term_pool())
    ctx = ctx.extended(TermDecl{name, Type::omega()});
  for (const std::string& name : proof_pool())
    ctx = ctx.extended(ProofDecl{name, Term::bottom()});
  for (const std::string& name : path_pool())
    ctx = ctx.extended(
        PathDecl{name, Equation{Term::bottom(), Type::omega(), Term::bottom()}});
  return ctx;
}

Substitution gen_raw_substitution(Rng& rng, int budget) {
  Substitution s;
  for (const std::string& name : term_pool())
    if (rng.chance(1, 2)) s.set_term(name, gen_raw_term(rng, 1 + rng.below(budget)));
  for (const std::string& name : proof_pool())
    if (rng.chance(1, 3)) s.set_proof(name, gen_raw_proof(rng, 1 + rng.below(budget)));
  for (const std::string& name : path_pool())
    if (rng.chance(1, 3)) s.set_path(name, gen_raw_path(rng, 1 + rng.below(budget)));
  return s;
}

PathSubstitution gen_raw_path_substitution(Rng& rng, int budget) {
  PathSubstitution tau;
  for (const std::string& name : term_pool())
    if (rng.chance(1, 2))
      tau.set(name, PathBinding{gen_raw_path(rng, 1 + rng.below(budget)),
                                gen_raw_term(rng, 1 + rng.below(budget)),
                                gen_raw_term(rng, 1 + rng.below(budget))});
  return tau;
}

// ---------------------------------------------------------------------------
// Typed generation
// ---------------------------------------------------------------------------

namespace {

constexpr int kGenFuel = kPropertyFuel;

std::string fresh_var(const Context& ctx, const char* base) {
  return fresh_name(base, ctx.all_names());
}

std::vector<std::string> term_vars_of_type(const Context& ctx, const Type& type) {
  std::vector<std::string> out;
  for (const ContextEntry& entry : ctx.entries())
    if (const auto* d = std::get_if<TermDecl>(&entry))
      if (d->type == type) out.push_back(d->name);
  return out;
}

}  // namespace

Term gen_term_of_type(Rng& rng, const Context& ctx, const Type& type, int budget) {
  std::vector<std::string> vars = term_vars_of_type(ctx, type);
  if (budget <= 1) {
    if (!vars.empty() && rng.chance(2, 3)) return Term::var(rng.pick(vars));
    return canonical_inhabitant(type);
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    switch (rng.below(5)) {
      case 0:
        if (!vars.empty()) return Term::var(rng.pick(vars));
        break;
      case 1:
        if (type.is_omega()) return Term::bottom();
        break;
      case 2: {  // implication at Omega
        if (!type.is_omega() || budget < 3) break;
        int left = 1 + rng.below(budget - 2);
        return Term::imp(gen_term_of_type(rng, ctx, Type::omega(), left),
                         gen_term_of_type(rng, ctx, Type::omega(), budget - 1 - left));
      }
      case 3: {  // lambda at an arrow type
        if (!type.is_arrow()) break;
        std::string x = fresh_var(ctx, "v");
        Context extended = ctx.extended(TermDecl{x, type.domain()});
        Term body = gen_term_of_type(rng, extended, type.codomain(),
                                     budget - 1 - type_size(type.domain()));
        return Term::lam(x, type.domain(), body);
      }
      case 4: {  // application
        if (budget < 4) break;
        Type arg_type = gen_raw_type(rng, 3);
        Term fun =
            gen_term_of_type(rng, ctx, Type::arrow(arg_type, type), budget / 2);
        Term arg = gen_term_of_type(rng, ctx, arg_type, budget / 2);
        return Term::app(fun, arg);
      }
    }
  }
  return canonical_inhabitant(type);
}

std::optional<Proof> gen_proof_of(Rng& rng, const Context& ctx, const Term& prop,
                                  int budget) {
  ReductionOutcome normal = normalize_term(prop, kGenFuel);
  if (normal.status == NormalStatus::FuelExhausted) return std::nullopt;
  Term head = normal_form_of_term(normal);

  std::vector<Proof> assumptions;
  for (const ContextEntry& entry : ctx.entries())
    if (const auto* d = std::get_if<ProofDecl>(&entry))
      if (convertible(d->prop, head, kGenFuel).value_or(false))
        assumptions.push_back(Proof::var(d->name));

  const auto* imp = as_imp(head);
  for (int attempt = 0; attempt < 4; ++attempt) {
    switch (rng.below(3)) {
      case 0:
        if (!assumptions.empty()) return rng.pick(assumptions);
        break;
      case 1: {  // lambda
        if (!imp || budget < 2) break;
        std::string p = fresh_var(ctx, "h");
        Context extended = ctx.extended(ProofDecl{p, imp->lhs});
        std::optional<Proof> body =
            gen_proof_of(rng, extended, imp->rhs, budget - 2);
        if (body) return Proof::lam(p, imp->lhs, *body);
        break;
      }
      case 2: {  // transport along reflexivity when the sides are convertible
        if (!imp) break;
        if (convertible(imp->lhs, imp->rhs, kGenFuel).value_or(false))
          return Proof::plus(Path::ref(imp->lhs));
        break;
      }
    }
  }
  if (!assumptions.empty()) return assumptions.front();
  if (imp) {
    std::string p = fresh_var(ctx, "h");
    Context extended = ctx.extended(ProofDecl{p, imp->lhs});
    std::optional<Proof> body = gen_proof_of(rng, extended, imp->rhs, budget - 2);
    if (body) return Proof::lam(p, imp->lhs, *body);
  }
  return std::nullopt;
}

std::optional<std::pair<Path, Equation>> gen_path_at_type(Rng& rng, const Context& ctx,
                                                          const Type& type, int budget) {
  std::vector<std::pair<Path, Equation>> vars;
  for (const ContextEntry& entry : ctx.entries())
    if (const auto* d = std::get_if<PathDecl>(&entry))
      if (d->eq.type == type) vars.emplace_back(Path::var(d->name), d->eq);

  for (int attempt = 0; attempt < 6; ++attempt) {
    switch (rng.below(5)) {
      case 0:
        if (!vars.empty()) return rng.pick(vars);
        break;
      case 1: {  // reflexivity
        Term m = gen_term_of_type(rng, ctx, type, std::max(1, budget - 1));
        return std::make_pair(Path::ref(m), Equation{m, type, m});
      }
      case 2: {  // =>* at Omega
        if (!type.is_omega() || budget < 4) break;
        auto lhs = gen_path_at_type(rng, ctx, Type::omega(), budget / 2);
        auto rhs = gen_path_at_type(rng, ctx, Type::omega(), budget / 2);
        if (!lhs || !rhs) break;
        return std::make_pair(
            Path::imp_star(lhs->first, rhs->first),
            Equation{Term::imp(lhs->second.lhs, rhs->second.lhs), Type::omega(),
                     Term::imp(lhs->second.rhs, rhs->second.rhs)});
      }
      case 3: {  // univ at Omega
        if (!type.is_omega() || budget < 4) break;
        Term src = gen_term_of_type(rng, ctx, Type::omega(), 3);
        Term tgt = rng.chance(1, 2) ? src : gen_term_of_type(rng, ctx, Type::omega(), 3);
        std::optional<Proof> fwd = gen_proof_of(rng, ctx, Term::imp(src, tgt), budget / 3);
        std::optional<Proof> bwd = gen_proof_of(rng, ctx, Term::imp(tgt, src), budget / 3);
        if (!fwd || !bwd) {
          tgt = src;
          fwd = rules::identity_proof(src);
          bwd = fwd;
        }
        return std::make_pair(Path::univ(src, tgt, *fwd, *bwd),
                              Equation{src, Type::omega(), tgt});
      }
      case 4: {  // triple lambda over an applied weaker path, or an application
        if (type.is_arrow() && budget >= 5) {
          auto inner = gen_path_at_type(rng, ctx, type, budget - 4);
          if (!inner) break;
          std::string e = fresh_var(ctx, "c");
          Context with_e = ctx.extended(PathDecl{
              e, Equation{Term::bottom(), Type::omega(), Term::bottom()}});
          std::string x = fresh_var(with_e, "v");
          Context with_x = with_e.extended(TermDecl{x, type.domain()});
          std::string y = fresh_var(with_x, "v");
          Path body = Path::app(inner->first, Term::var(x), Term::var(y), Path::var(e));
          return std::make_pair(Path::tri_lam(e, x, y, type.domain(), body),
                                inner->second);
        }
        if (budget >= 6) {  // path application ending at `type`
          Type arg_type = gen_raw_type(rng, 2);
          auto fun = gen_path_at_type(rng, ctx, Type::arrow(arg_type, type), budget / 2);
          auto arg = gen_path_at_type(rng, ctx, arg_type, budget / 3);
          if (!fun || !arg) break;
          return std::make_pair(
              Path::app(fun->first, arg->second.lhs, arg->second.rhs, arg->first),
              Equation{Term::app(fun->second.lhs, arg->second.lhs), type,
                       Term::app(fun->second.rhs, arg->second.rhs)});
        }
        break;
      }
    }
  }
  Term m = gen_term_of_type(rng, ctx, type, std::max(1, budget - 1));
  return std::make_pair(Path::ref(m), Equation{m, type, m});
}

Context gen_context(Rng& rng, const GenConfig& cfg, bool allow_term_vars) {
  Context ctx;
  for (int i = 0; i < cfg.context_depth; ++i) {
    int roll = rng.below(allow_term_vars ? 3 : 2);
    if (allow_term_vars && roll == 2) {
      ctx = ctx.extended(TermDecl{fresh_var(ctx, "v"), gen_raw_type(rng, 3)});
    } else if (roll == 1) {
      Term prop = gen_term_of_type(rng, ctx, Type::omega(), 4);
      ctx = ctx.extended(ProofDecl{fresh_var(ctx, "h"), prop});
    } else {
      Type type = gen_raw_type(rng, 3);
      Term lhs = gen_term_of_type(rng, ctx, type, 3);
      Term rhs = gen_term_of_type(rng, ctx, type, 3);
      ctx = ctx.extended(PathDecl{fresh_var(ctx, "c"), Equation{lhs, type, rhs}});
    }
  }
  return ctx;
}

namespace {

std::optional<std::pair<Proof, Term>> gen_proof_synth(Rng& rng, const Context& ctx,
                                                      int budget) {
  std::vector<std::pair<Proof, Term>> assumptions;
  for (const ContextEntry& entry : ctx.entries())
    if (const auto* d = std::get_if<ProofDecl>(&entry))
      assumptions.emplace_back(Proof::var(d->name), d->prop);

  for (int attempt = 0; attempt < 6; ++attempt) {
    switch (rng.below(4)) {
      case 0:
        if (!assumptions.empty()) return rng.pick(assumptions);
        break;
      case 1: {  // lambda
        if (budget < 3) break;
        Term ann = gen_term_of_type(rng, ctx, Type::omega(), 3);
        std::string p = fresh_var(ctx, "h");
        auto body = gen_proof_synth(rng, ctx.extended(ProofDecl{p, ann}), budget - 2);
        if (!body) break;
        return std::make_pair(Proof::lam(p, ann, body->first),
                              Term::imp(ann, body->second));
      }
      case 2: {  // transport
        if (budget < 3) break;
        auto path = gen_path_at_type(rng, ctx, Type::omega(), budget - 1);
        if (!path) break;
        if (rng.chance(1, 2))
          return std::make_pair(Proof::plus(path->first),
                                Term::imp(path->second.lhs, path->second.rhs));
        return std::make_pair(Proof::minus(path->first),
                              Term::imp(path->second.rhs, path->second.lhs));
      }
      case 3: {  // application
        if (budget < 5) break;
        auto fun = gen_proof_synth(rng, ctx, budget / 2);
        if (!fun) break;
        ReductionOutcome normal = normalize_term(fun->second, kGenFuel);
        if (normal.status == NormalStatus::FuelExhausted) break;
        const auto* imp = as_imp(normal_form_of_term(normal));
        if (!imp) break;
        std::optional<Proof> arg = gen_proof_of(rng, ctx, imp->lhs, budget / 2);
        if (!arg) break;
        return std::make_pair(Proof::app(fun->first, *arg), imp->rhs);
      }
    }
  }
  if (!assumptions.empty()) return assumptions.front();
  return std::nullopt;
}

}  // namespace

std::optional<TypedSample> gen_typed(ExprClass sort, const Context& ctx,
                                     const GenConfig& cfg) {
  Rng rng(cfg.seed);
  int budget = std::max(1, cfg.size);
  switch (sort) {
    case ExprClass::Term: {
      Type type = gen_raw_type(rng, 3);
      Term term = gen_term_of_type(rng, ctx, type, budget);
      return TypedSample{Expr{term}, Classifier{type}};
    }
    case ExprClass::Proof: {
      for (int attempt = 0; attempt < 8; ++attempt) {
        auto result = gen_proof_synth(rng, ctx, budget);
        if (result)
          return TypedSample{Expr{result->first}, Classifier{result->second}};
      }
      return std::nullopt;
    }
    case ExprClass::Path: {
      Type type = gen_raw_type(rng, 3);
      auto result = gen_path_at_type(rng, ctx, type, budget);
      if (!result) return std::nullopt;
      return TypedSample{Expr{result->first}, Classifier{result->second}};
    }
  }
  return std::nullopt;
}

bool verify_sample(const Context& ctx, const TypedSample& sample,
                   const CheckOptions& options) {
  try {
    if (const auto* term = std::get_if<Term>(&sample.expr)) {
      Type inferred = infer_type(ctx, *term, options);
      return inferred == std::get<Type>(sample.classifier);
    }
    if (const auto* proof = std::get_if<Proof>(&sample.expr)) {
      check_proof(ctx, *proof, std::get<Term>(sample.classifier), options);
      return true;
    }
    check_path(ctx, std::get<Path>(sample.expr), std::get<Equation>(sample.classifier),
               options);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

namespace {

std::string level_name(const char* prefix, int level) {
  return prefix + std::to_string(level);
}

}  // namespace

const std::vector<Type>& ClosedEnumerator::types(int size) {
  if (auto it = types_.find(size); it != types_.end()) return it->second;
  std::vector<Type> out;
  if (size == 1) {
    out.push_back(Type::omega());
  } else if (size >= 3) {
    for (int left = 1; left <= size - 2; ++left)
      for (const Type& a : types(left))
        for (const Type& b : types(size - 1 - left)) out.push_back(Type::arrow(a, b));
  }
  return types_.emplace(size, std::move(out)).first->second;
}

const std::vector<Term>& ClosedEnumerator::terms(int size, int tdepth, int pdepth,
                                                 int edepth) {
  Key key{size, tdepth, pdepth, edepth};
  if (auto it = terms_.find(key); it != terms_.end()) return it->second;
  std::vector<Term> out;
  if (size == 1) {
    out.push_back(Term::bottom());
    for (int i = 0; i < tdepth; ++i) out.push_back(Term::var(level_name("tv", i)));
  } else if (size >= 3) {
    for (int left = 1; left <= size - 2; ++left) {
      for (const Term& lhs : terms(left, tdepth, pdepth, edepth))
        for (const Term& rhs : terms(size - 1 - left, tdepth, pdepth, edepth)) {
          out.push_back(Term::imp(lhs, rhs));
          out.push_back(Term::app(lhs, rhs));
        }
      for (const Type& ann : types(left))
        for (const Term& body : terms(size - 1 - left, tdepth + 1, pdepth, edepth))
          out.push_back(Term::lam(level_name("tv", tdepth), ann, body));
    }
  }
  return terms_.emplace(key, std::move(out)).first->second;
}

const std::vector<Proof>& ClosedEnumerator::proofs(int size, int tdepth, int pdepth,
                                                   int edepth) {
  Key key{size, tdepth, pdepth, edepth};
  if (auto it = proofs_.find(key); it != proofs_.end()) return it->second;
  std::vector<Proof> out;
  if (size == 1) {
    for (int i = 0; i < pdepth; ++i) out.push_back(Proof::var(level_name("pv", i)));
  } else if (size >= 2) {
    for (const Path& path : paths(size - 1, tdepth, pdepth, edepth)) {
      out.push_back(Proof::plus(path));
      out.push_back(Proof::minus(path));
    }
    for (int left = 1; left <= size - 2; ++left) {
      for (const Term& ann : terms(left, tdepth, pdepth, edepth))
        for (const Proof& body : proofs(size - 1 - left, tdepth, pdepth + 1, edepth))
          out.push_back(Proof::lam(level_name("pv", pdepth), ann, body));
      for (const Proof& fun : proofs(left, tdepth, pdepth, edepth))
        for (const Proof& arg : proofs(size - 1 - left, tdepth, pdepth, edepth))
          out.push_back(Proof::app(fun, arg));
    }
  }
  return proofs_.emplace(key, std::move(out)).first->second;
}

const std::vector<Path>& ClosedEnumerator::paths(int size, int tdepth, int pdepth,
                                                 int edepth) {
  Key key{size, tdepth, pdepth, edepth};
  if (auto it = paths_.find(key); it != paths_.end()) return it->second;
  std::vector<Path> out;
  if (size == 1) {
    for (int i = 0; i < edepth; ++i) out.push_back(Path::var(level_name("ev", i)));
  } else if (size >= 2) {
    for (const Term& term : terms(size - 1, tdepth, pdepth, edepth))
      out.push_back(Path::ref(term));
    for (int left = 1; left <= size - 2; ++left) {
      for (const Path& lhs : paths(left, tdepth, pdepth, edepth))
        for (const Path& rhs : paths(size - 1 - left, tdepth, pdepth, edepth))
          out.push_back(Path::imp_star(lhs, rhs));
      for (const Type& ann : types(left))
        for (const Path& body : paths(size - 1 - left, tdepth + 2, pdepth, edepth + 1))
          out.push_back(Path::tri_lam(level_name("ev", edepth),
                                      level_name("tv", tdepth),
                                      level_name("tv", tdepth + 1), ann, body));
    }
    // univ and path application have four components
    for (int s1 = 1; s1 <= size - 4; ++s1)
      for (int s2 = 1; s2 <= size - 3 - s1; ++s2)
        for (int s3 = 1; s3 <= size - 2 - s1 - s2; ++s3) {
          int s4 = size - 1 - s1 - s2 - s3;
          for (const Term& src : terms(s1, tdepth, pdepth, edepth))
            for (const Term& tgt : terms(s2, tdepth, pdepth, edepth))
              for (const Proof& fwd : proofs(s3, tdepth, pdepth, edepth))
                for (const Proof& bwd : proofs(s4, tdepth, pdepth, edepth))
                  out.push_back(Path::univ(src, tgt, fwd, bwd));
          for (const Path& fun : paths(s1, tdepth, pdepth, edepth))
            for (const Term& left : terms(s2, tdepth, pdepth, edepth))
              for (const Term& right : terms(s3, tdepth, pdepth, edepth))
                for (const Path& arg : paths(s4, tdepth, pdepth, edepth))
                  out.push_back(Path::app(fun, left, right, arg));
        }
  }
  return paths_.emplace(key, std::move(out)).first->second;
}

std::vector<Proof> enumerate_closed_proofs(int max_size) {
  ClosedEnumerator enumerator;
  std::vector<Proof> out;
  for (int size = 1; size <= max_size; ++size) {
    const std::vector<Proof>& layer = enumerator.proofs(size, 0, 0, 0);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace phoml
