#include <doctest.h>

#include <functional>

#include "helpers.hpp"
#include "phoml/generators.hpp"
#include "phoml/substitution.hpp"
#include "phoml/typecheck.hpp"

using namespace phoml;
using namespace phoml::testing;

namespace {

Context respect_context() {
  // f : Omega -> Omega, x : Omega, y : Omega, p : x => y, q : y => x
  Context ctx;
  ctx = ctx.extended(TermDecl{"f", Type::arrow(Type::omega(), Type::omega())});
  ctx = ctx.extended(TermDecl{"x", Type::omega()});
  ctx = ctx.extended(TermDecl{"y", Type::omega()});
  ctx = ctx.extended(ProofDecl{"p", Term::imp(Term::var("x"), Term::var("y"))});
  ctx = ctx.extended(ProofDecl{"q", Term::imp(Term::var("y"), Term::var("x"))});
  return ctx;
}

TypeErrorKind kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const TypeError& error) {
    return error.kind();
  }
  throw std::logic_error("expected a type error");
}

// ---------------------------------------------------------------------------
// A second, checking-style validator: one deduction rule instance per node.
// Path applications fall back on the engine's equation synthesis for the
// function premise; everything else is decomposed independently.
// ---------------------------------------------------------------------------

struct Validator {
  CheckOptions options{kPropertyFuel};

  bool conv(const Term& a, const Term& b) const {
    return convertible(a, b, options.fuel).value_or(false);
  }

  std::optional<Term> whnf_imp(const Term& t) const {
    ReductionOutcome outcome = normalize_term(t, options.fuel);
    if (outcome.status == NormalStatus::FuelExhausted) return std::nullopt;
    return normal_form_of_term(outcome);
  }

  std::optional<Type> synth_term(const Context& ctx, const Term& t) const {
    if (const auto* f = as_free(t)) {
      const Type* type = ctx.lookup_term(f->name);
      if (!type) return std::nullopt;
      return *type;
    }
    if (as_bottom(t)) return Type::omega();
    if (const auto* i = as_imp(t)) {
      auto lhs = synth_term(ctx, i->lhs);
      auto rhs = synth_term(ctx, i->rhs);
      if (!lhs || !rhs || !lhs->is_omega() || !rhs->is_omega()) return std::nullopt;
      return Type::omega();
    }
    if (const auto* l = as_lam(t)) {
      std::string x = fresh_name("x", ctx.all_names());
      auto body = synth_term(ctx.extended(TermDecl{x, l->ann}),
                             open_body(*l, Term::var(x)));
      if (!body) return std::nullopt;
      return Type::arrow(l->ann, *body);
    }
    if (const auto* a = as_app(t)) {
      auto fun = synth_term(ctx, a->fun);
      auto arg = synth_term(ctx, a->arg);
      if (!fun || !arg || !fun->is_arrow() || !(fun->domain() == *arg))
        return std::nullopt;
      return fun->codomain();
    }
    return std::nullopt;
  }

  bool term(const Context& ctx, const Term& t, const Type& type) const {
    auto synthesized = synth_term(ctx, t);
    return synthesized && *synthesized == type;
  }

  bool proof(const Context& ctx, const Proof& p, const Term& prop) const {
    if (const auto* f = as_free(p)) {
      const Term* declared = ctx.lookup_proof(f->name);
      return declared && conv(*declared, prop);
    }
    if (const auto* l = as_lam(p)) {
      if (!term(ctx, l->ann, Type::omega())) return false;
      auto head = whnf_imp(prop);
      if (!head) return false;
      const auto* imp = as_imp(*head);
      if (!imp || !conv(l->ann, imp->lhs)) return false;
      std::string name = fresh_name("p", ctx.all_names());
      return proof(ctx.extended(ProofDecl{name, l->ann}),
                   open_body(*l, Proof::var(name)), imp->rhs);
    }
    if (const auto* a = as_app(p)) {
      Term fun_prop = infer_prop(ctx, a->fun, options);  // engine synthesis
      auto head = whnf_imp(fun_prop);
      if (!head) return false;
      const auto* imp = as_imp(*head);
      if (!imp) return false;
      return proof(ctx, a->arg, imp->lhs) && conv(imp->rhs, prop);
    }
    if (const auto* pl = as_plus(p)) {
      Equation eq = infer_equation(ctx, pl->path, options);
      return eq.type.is_omega() && conv(Term::imp(eq.lhs, eq.rhs), prop);
    }
    const auto* mi = as_minus(p);
    if (!mi) return false;
    Equation eq = infer_equation(ctx, mi->path, options);
    return eq.type.is_omega() && conv(Term::imp(eq.rhs, eq.lhs), prop);
  }

  bool path(const Context& ctx, const Path& p, const Equation& eq) const {
    if (const auto* f = as_free(p)) {
      const Equation* declared = ctx.lookup_path(f->name);
      return declared && declared->type == eq.type && conv(declared->lhs, eq.lhs) &&
             conv(declared->rhs, eq.rhs);
    }
    if (const auto* r = as_ref(p))
      return term(ctx, r->term, eq.type) && conv(r->term, eq.lhs) &&
             conv(r->term, eq.rhs);
    if (const auto* s = as_imp_star(p)) {
      if (!eq.type.is_omega()) return false;
      auto lhs = whnf_imp(eq.lhs);
      auto rhs = whnf_imp(eq.rhs);
      if (!lhs || !rhs) return false;
      const auto* li = as_imp(*lhs);
      const auto* ri = as_imp(*rhs);
      if (!li || !ri) return false;
      return path(ctx, s->lhs, Equation{li->lhs, Type::omega(), ri->lhs}) &&
             path(ctx, s->rhs, Equation{li->rhs, Type::omega(), ri->rhs});
    }
    if (const auto* u = as_univ(p)) {
      return eq.type.is_omega() && term(ctx, u->src, Type::omega()) &&
             term(ctx, u->tgt, Type::omega()) && conv(u->src, eq.lhs) &&
             conv(u->tgt, eq.rhs) &&
             proof(ctx, u->fwd, Term::imp(u->src, u->tgt)) &&
             proof(ctx, u->bwd, Term::imp(u->tgt, u->src));
    }
    if (const auto* t = as_tri_lam(p)) {
      if (!eq.type.is_arrow() || !(eq.type.domain() == t->ann)) return false;
      if (!term(ctx, eq.lhs, eq.type) || !term(ctx, eq.rhs, eq.type)) return false;
      std::string e = fresh_name("e", ctx.all_names());
      std::string x = fresh_name("x", ctx.all_names());
      std::string y = x + "'";
      Context extended =
          ctx.extended(TermDecl{x, t->ann})
              .extended(TermDecl{y, t->ann})
              .extended(PathDecl{e, Equation{Term::var(x), t->ann, Term::var(y)}});
      return path(extended, open_body(*t, Path::var(e), Term::var(x), Term::var(y)),
                  Equation{Term::app(eq.lhs, Term::var(x)), eq.type.codomain(),
                           Term::app(eq.rhs, Term::var(y))});
    }
    if (const auto* a = as_path_app(p)) {
      Equation fun = infer_equation(ctx, a->fun, options);  // engine synthesis
      if (!fun.type.is_arrow()) return false;
      Equation arg_eq = infer_equation(ctx, a->arg, options);
      return arg_eq.type == fun.type.domain() &&
             term(ctx, a->left, fun.type.domain()) &&
             term(ctx, a->right, fun.type.domain()) &&
             conv(arg_eq.lhs, a->left) && conv(arg_eq.rhs, a->right) &&
             fun.type.codomain() == eq.type &&
             conv(Term::app(fun.lhs, a->left), eq.lhs) &&
             conv(Term::app(fun.rhs, a->right), eq.rhs);
    }
    return false;
  }

  bool sample(const Context& ctx, const TypedSample& s) const {
    if (const auto* t = std::get_if<Term>(&s.expr))
      return term(ctx, *t, std::get<Type>(s.classifier));
    if (const auto* p = std::get_if<Proof>(&s.expr))
      return proof(ctx, *p, std::get<Term>(s.classifier));
    return path(ctx, std::get<Path>(s.expr), std::get<Equation>(s.classifier));
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Context validity
// ---------------------------------------------------------------------------

TEST_CASE("context validity accepts the worked contexts") {
  CHECK_NOTHROW(check_context(Context{}));
  CHECK_NOTHROW(check_context(equivalence_context()));
  CHECK_NOTHROW(check_context(respect_context()));
}

TEST_CASE("an assumption whose proposition is not at Omega is rejected") {
  Context bad = Context{}.extended(ProofDecl{"p", parse_term("\\x:Omega. x")});
  TypeErrorKind kind = kind_of([&] { check_context(bad); });
  CHECK(kind == TypeErrorKind::ContextIllFormed);
}

TEST_CASE("an equation whose sides disagree with its type is rejected") {
  Context bad = Context{}.extended(
      PathDecl{"e", Equation{parse_term("\\x:Omega. x"), Type::omega(),
                             Term::bottom()}});
  CHECK(kind_of([&] { check_context(bad); }) == TypeErrorKind::ContextIllFormed);
}

// ---------------------------------------------------------------------------
// Term inference
// ---------------------------------------------------------------------------

TEST_CASE("term inference on the basic forms") {
  CHECK(infer_type(Context{}, Term::bottom()) == Type::omega());
  CHECK(infer_type(Context{}, parse_term("\\x:Omega. x")) ==
        parse_type("Omega -> Omega"));
  CHECK(infer_type(Context{}, parse_term("\\h:Omega -> Omega. h (bot => bot)")) ==
        parse_type("(Omega -> Omega) -> Omega"));
}

TEST_CASE("term inference error kinds") {
  CHECK(kind_of([] { infer_type(Context{}, Term::var("x")); }) ==
        TypeErrorKind::UnboundVariable);
  CHECK(kind_of([] { infer_type(Context{}, parse_term("bot bot")); }) ==
        TypeErrorKind::NotAnArrow);
  CHECK(kind_of([] {
          infer_type(Context{},
                     parse_term("(\\h:Omega -> Omega. bot) bot"));
        }) == TypeErrorKind::KindMismatch);
  CHECK(kind_of([] { infer_type(Context{}, parse_term("bot => (\\x:Omega. x)")); }) ==
        TypeErrorKind::KindMismatch);
}

// ---------------------------------------------------------------------------
// Proof inference
// ---------------------------------------------------------------------------

TEST_CASE("a proof variable proves its declared proposition") {
  Context ctx = Context{}.extended(ProofDecl{"p", Term::bottom()});
  CHECK(alpha_equal(infer_prop(ctx, Proof::var("p")), Term::bottom()));
}

TEST_CASE("the equivalence context types the forward transport") {
  Context ctx = equivalence_context();
  Proof fwd = parse_proof("\\p:(bot => bot) => x. e^+ (p (\\q:bot. q))", ctx);
  CHECK(alpha_equal(infer_prop(ctx, fwd),
                    parse_term("((bot => bot) => x) => y", ctx)));
}

TEST_CASE("functions respect logical equivalence, in both directions") {
  Context ctx = respect_context();
  Proof forward = parse_proof("(ref(f) @[x, y] univ(x, y, p, q))^+", ctx);
  CHECK(alpha_equal(infer_prop(ctx, forward), parse_term("f x => f y", ctx)));
  Proof backward = parse_proof("(ref(f) @[x, y] univ(x, y, p, q))^-", ctx);
  CHECK(alpha_equal(infer_prop(ctx, backward), parse_term("f y => f x", ctx)));
}

TEST_CASE("proof inference error kinds") {
  Context ctx = Context{}
                    .extended(ProofDecl{"p", Term::bottom()})
                    .extended(ProofDecl{"imp", parse_term("bot => bot")});
  CHECK(kind_of([&] { infer_prop(ctx, parse_proof("p p", ctx)); }) ==
        TypeErrorKind::NotAnImplication);
  CHECK(kind_of([&] { infer_prop(ctx, parse_proof("imp imp", ctx)); }) ==
        TypeErrorKind::NotConvertible);
  CHECK(kind_of([&] { infer_prop(ctx, parse_proof("ref(\\x:Omega. x)^+", ctx)); }) ==
        TypeErrorKind::NotOmegaEquation);
  CHECK(kind_of([&] { infer_prop(ctx, Proof::var("nope")); }) ==
        TypeErrorKind::UnboundVariable);
  CHECK(kind_of([&] {
          infer_prop(ctx, parse_proof("\\r:(\\x:Omega. x). r", ctx));
        }) == TypeErrorKind::KindMismatch);
}

TEST_CASE("conversion runs the argument proposition to a head implication") {
  Context ctx = Context{}.extended(ProofDecl{"p", Term::bottom()});
  // ((\x. x => x) bot) normalizes to bot => bot before the application rule
  Proof d = parse_proof("(\\h:(\\x:Omega. x => x) bot. h p) (\\r:bot. r)", ctx);
  CHECK(alpha_equal(infer_prop(ctx, d), Term::bottom()));
}

// ---------------------------------------------------------------------------
// Path inference
// ---------------------------------------------------------------------------

TEST_CASE("reflexivity proves the diagonal equation") {
  Equation eq = infer_equation(Context{}, parse_path("ref(bot)"));
  CHECK(alpha_equal(eq, Equation{Term::bottom(), Type::omega(), Term::bottom()}));
}

TEST_CASE("the univ path of the computation example") {
  Context ctx = equivalence_context();
  Path p = parse_path(
      "univ((bot => bot) => x, y,"
      " \\p:(bot => bot) => x. e^+ (p (\\q:bot. q)),"
      " \\m:y. \\n:bot => bot. e^- m)",
      ctx);
  Equation eq = infer_equation(ctx, p);
  CHECK(alpha_equal(eq, parse_equation("(bot => bot) => x =[Omega] y", ctx)));
}

TEST_CASE("triple lambda inference abstracts the equation sides") {
  Context ctx = equivalence_context();
  Path tri = parse_path(
      "lll e : x =[Omega] y ."
      " univ((bot => bot) => x, y,"
      "  \\p:(bot => bot) => x. e^+ (p (\\q:bot. q)),"
      "  \\m:y. \\n:bot => bot. e^- m)");
  Equation eq = infer_equation(Context{}, tri);
  Equation expected{parse_term("\\x:Omega. (bot => bot) => x"),
                    parse_type("Omega -> Omega"), parse_term("\\x:Omega. x")};
  CHECK(alpha_equal(eq, expected));
}

TEST_CASE("triple lambda inference takes an applied head directly") {
  Context ctx = Context{}
                    .extended(TermDecl{"g", parse_type("Omega -> Omega")})
                    .extended(TermDecl{"h", parse_type("Omega -> Omega")})
                    .extended(PathDecl{"c", Equation{Term::var("g"),
                                                     parse_type("Omega -> Omega"),
                                                     Term::var("h")}});
  Path tri = parse_path("lll e : x =[Omega] y . c @[x, y] e", ctx);
  Equation eq = infer_equation(ctx, tri);
  CHECK(alpha_equal(eq, Equation{Term::var("g"), parse_type("Omega -> Omega"),
                                 Term::var("h")}));
}

TEST_CASE("triple lambda shape errors when a side mentions the wrong endpoint") {
  Path bad = parse_path("lll e : x =[Omega] y . ref(y)");
  CHECK(kind_of([&] { infer_equation(Context{}, bad); }) ==
        TypeErrorKind::TriLamShapeError);
}

TEST_CASE("path application checks annotations against the argument endpoints") {
  Context ctx = Context{}.extended(
      PathDecl{"k", Equation{Term::bottom(), Type::omega(), Term::bottom()}});
  Equation eq = infer_equation(
      ctx, parse_path("ref(\\x:Omega. x) @[bot, (\\z:Omega. z) bot] k", ctx));
  CHECK(eq.type.is_omega());
  CHECK(alpha_equal(eq.lhs, parse_term("(\\x:Omega. x) bot")));

  CHECK(kind_of([&] {
          infer_equation(ctx,
                         parse_path("ref(\\x:Omega. x) @[bot, bot => bot] k", ctx));
        }) == TypeErrorKind::EndpointMismatch);
  CHECK(kind_of([&] {
          infer_equation(ctx, parse_path("ref(bot) @[bot, bot] k", ctx));
        }) == TypeErrorKind::NotAnArrow);
}

// ---------------------------------------------------------------------------
// Checking mode
// ---------------------------------------------------------------------------

TEST_CASE("check_proof converts before comparing") {
  Context ctx;
  CHECK_NOTHROW(check_proof(ctx, parse_proof("\\p:bot. p"),
                            parse_term("(\\x:Omega. x) bot => bot")));
  CHECK(kind_of([&] {
          check_proof(ctx, parse_proof("\\p:bot. p"), Term::bottom());
        }) == TypeErrorKind::NotConvertible);
}

TEST_CASE("check_path accepts the computation example judgements") {
  // The closed triple-lambda path against F =[Omega -> Omega] I.
  Path tri = parse_path(
      "lll e : x =[Omega] y ."
      " univ((bot => bot) => x, y,"
      "  \\p:(bot => bot) => x. e^+ (p (\\q:bot. q)),"
      "  \\m:y. \\n:bot => bot. e^- m)");
  Equation stated{parse_term("\\x:Omega. (bot => bot) => x"),
                  parse_type("Omega -> Omega"), parse_term("\\x:Omega. x")};
  CHECK_NOTHROW(check_path(Context{}, tri, stated));

  // The applied head against (T => T) =[Omega] T.
  Path applied = parse_path(
      "ref(\\h:Omega -> Omega. h (bot => bot))"
      " @[\\x:Omega. (bot => bot) => x, \\x:Omega. x] (" +
      std::string("lll e : x =[Omega] y ."
                  " univ((bot => bot) => x, y,"
                  "  \\p:(bot => bot) => x. e^+ (p (\\q:bot. q)),"
                  "  \\m:y. \\n:bot => bot. e^- m))"));
  Equation target = parse_equation(
      "(bot => bot) => (bot => bot) =[Omega] bot => bot");
  CHECK_NOTHROW(check_path(Context{}, applied, target));
}

TEST_CASE("check_path rejects distinct normal endpoints") {
  CHECK_NOTHROW(check_path(Context{}, parse_path("ref(bot)"),
                           parse_equation("bot =[Omega] bot")));
  CHECK(kind_of([&] {
          check_path(Context{}, parse_path("ref(bot)"),
                     parse_equation("bot =[Omega] bot => bot"));
        }) == TypeErrorKind::NotConvertible);
}

TEST_CASE("fuel exhaustion is a distinct error kind") {
  CheckOptions tiny{1};
  CHECK(kind_of([&] {
          check_proof(Context{}, parse_proof("\\p:bot. p"),
                      parse_term("(\\x:Omega. x) ((\\x:Omega. x) bot) => bot"), tiny);
        }) == TypeErrorKind::FuelExhausted);
}

// ---------------------------------------------------------------------------
// Judgements and derivation validation
// ---------------------------------------------------------------------------

TEST_CASE("check_judgement dispatches on the judgement form") {
  Context ctx = respect_context();
  CHECK_NOTHROW(check_judgement(Judgement{ctx, JudgementValid{}}));
  CHECK_NOTHROW(check_judgement(
      Judgement{ctx, JudgementTerm{parse_term("f x", ctx), Type::omega()}}));
  CHECK_NOTHROW(check_judgement(Judgement{
      ctx, JudgementProof{parse_proof("(ref(f) @[x, y] univ(x, y, p, q))^+", ctx),
                          parse_term("f x => f y", ctx)}}));
  CHECK_NOTHROW(check_judgement(Judgement{
      ctx, JudgementPath{parse_path("ref(f) @[x, y] univ(x, y, p, q)", ctx),
                         parse_equation("f x =[Omega] f y", ctx)}}));
}

TEST_CASE("successful inference is confirmed by rule-instance validation") {
  Validator validator;
  GenConfig cfg;
  int validated = 0;
  for (int i = 0; i < 1000; ++i) {
    cfg.seed = 13000 + static_cast<std::uint64_t>(i);
    Rng rng(cfg.seed);
    Context ctx = gen_context(rng, cfg, true);
    ExprClass sort = static_cast<ExprClass>(i % 3);
    auto sample = gen_typed(sort, ctx, cfg);
    if (!sample) continue;
    REQUIRE(verify_sample(ctx, *sample, CheckOptions{kPropertyFuel}));
    REQUIRE(validator.sample(ctx, *sample));
    ++validated;
  }
  CHECK(validated > 500);
}

TEST_CASE("inferred propositions always type at Omega") {
  GenConfig cfg;
  for (int i = 0; i < 2000; ++i) {
    cfg.seed = 14000 + static_cast<std::uint64_t>(i);
    Rng rng(cfg.seed);
    Context ctx = gen_context(rng, cfg, true);
    auto sample = gen_typed(ExprClass::Proof, ctx, cfg);
    if (!sample) continue;
    Term prop = infer_prop(ctx, std::get<Proof>(sample->expr),
                           CheckOptions{kPropertyFuel});
    REQUIRE(infer_type(ctx, prop, CheckOptions{kPropertyFuel}) == Type::omega());
  }
}

TEST_CASE("nested triple lambdas check and infer at curried arrow types") {
  Path nested = parse_path("lll e : x =[Omega] y . lll c : a =[Omega] b . e");
  Equation stated{parse_term("\\u:Omega. \\v:Omega. u"),
                  parse_type("Omega -> Omega -> Omega"),
                  parse_term("\\u:Omega. \\v:Omega. u")};
  CHECK_NOTHROW(check_path(Context{}, nested, stated));
  Equation inferred = infer_equation(Context{}, nested);
  CHECK(alpha_equal(inferred, stated));

  // swapping the endpoints inside breaks the shape on synthesis
  Path swapped = parse_path("lll e : x =[Omega] y . lll c : a =[Omega] b . ref(b)");
  CHECK(kind_of([&] { infer_equation(Context{}, swapped); }) ==
        TypeErrorKind::TriLamShapeError);
}

TEST_CASE("well-typed substitution preserves verdicts") {
  GenConfig cfg;
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    cfg.seed = 15000 + static_cast<std::uint64_t>(i);
    Rng rng(cfg.seed);

    // Target context first, then a source context of closed classifiers with
    // one substitution image per declaration.
    Context target = gen_context(rng, cfg, true);
    Context source;
    Substitution sigma;
    bool complete = true;
    int entries = 1 + rng.below(3);
    for (int k = 0; k < entries && complete; ++k) {
      std::string name = fresh_name("s", source.all_names());
      switch (rng.below(3)) {
        case 0: {
          Type type = gen_raw_type(rng, 3);
          source = source.extended(TermDecl{name, type});
          sigma.set_term(name, gen_term_of_type(rng, target, type, 4));
          break;
        }
        case 1: {
          Term prop = gen_term_of_type(rng, Context{}, Type::omega(), 3);
          auto image = gen_proof_of(rng, target, prop, 5);
          if (!image) {
            complete = false;
            break;
          }
          source = source.extended(ProofDecl{name, prop});
          sigma.set_proof(name, *image);
          break;
        }
        default: {
          Type type = gen_raw_type(rng, 3);
          Term side = gen_term_of_type(rng, Context{}, type, 3);
          source = source.extended(PathDecl{name, Equation{side, type, side}});
          sigma.set_path(name, Path::ref(side));
          break;
        }
      }
    }
    if (!complete) continue;

    ExprClass sort = static_cast<ExprClass>(i % 3);
    auto sample = gen_typed(sort, source, cfg);
    if (!sample) continue;
    ++checked;

    CheckOptions options{kPropertyFuel};
    Expr image = subst(sample->expr, sigma);
    if (const auto* type = std::get_if<Type>(&sample->classifier)) {
      REQUIRE(infer_type(target, std::get<Term>(image), options) == *type);
    } else if (const auto* prop = std::get_if<Term>(&sample->classifier)) {
      REQUIRE_NOTHROW(check_proof(target, std::get<Proof>(image),
                                  subst(*prop, sigma), options));
    } else {
      REQUIRE_NOTHROW(check_path(target, std::get<Path>(image),
                                 subst(std::get<Equation>(sample->classifier), sigma),
                                 options));
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("errors render with stable kinds and positions") {
  try {
    infer_type(Context{}, parse_term("bot bot"));
    FAIL("expected an error");
  } catch (const TypeError& error) {
    CHECK(error.render().rfind("ERROR NotAnArrow at fun:", 0) == 0);
  }
}
