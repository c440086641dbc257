#include "phoml/typecheck.hpp"

#include <set>

#include "phoml/printer.hpp"
#include "phoml/substitution.hpp"

namespace phoml {

std::string to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::KindMismatch: return "KindMismatch";
    case TypeErrorKind::NotAnImplication: return "NotAnImplication";
    case TypeErrorKind::NotAnArrow: return "NotAnArrow";
    case TypeErrorKind::NotOmegaEquation: return "NotOmegaEquation";
    case TypeErrorKind::EndpointMismatch: return "EndpointMismatch";
    case TypeErrorKind::NotConvertible: return "NotConvertible";
    case TypeErrorKind::ContextIllFormed: return "ContextIllFormed";
    case TypeErrorKind::FuelExhausted: return "FuelExhausted";
    case TypeErrorKind::TriLamShapeError: return "TriLamShapeError";
  }
  return "Unknown";
}

TypeError::TypeError(TypeErrorKind kind, std::string path, std::string detail)
    : std::runtime_error("ERROR " + to_string(kind) + " at " +
                         (path.empty() ? "top" : path) + ": " + detail),
      kind_(kind),
      path_(std::move(path)),
      detail_(std::move(detail)) {}

std::string TypeError::render() const { return what(); }

namespace {

std::string at(const std::string& path, const char* segment) {
  if (path.empty()) return segment;
  return path + "." + segment;
}

[[noreturn]] void fail(TypeErrorKind kind, const std::string& path,
                       const std::string& detail) {
  throw TypeError(kind, path, detail);
}

// Inference carries the context, the fuel options and the position of the
// subject inside the original expression (for error locations).
struct Checker {
  const CheckOptions& options;

  std::string fresh_in(const Context& ctx, const std::string& hint,
                       const char* fallback, const FreeVars& fv) const {
    std::set<std::string> avoid = ctx.all_names();
    avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
    avoid.insert(fv.proof_vars.begin(), fv.proof_vars.end());
    avoid.insert(fv.path_vars.begin(), fv.path_vars.end());
    return fresh_name(hint.empty() ? fallback : hint, avoid);
  }

  bool convertible_or_fail(const Term& a, const Term& b, const std::string& path) const {
    std::optional<bool> result = convertible(a, b, options.fuel);
    if (!result)
      fail(TypeErrorKind::FuelExhausted, path,
           "conversion ran out of fuel comparing " + print(a) + " with " + print(b));
    return *result;
  }

  // ---- terms ----

  Type infer(const Context& ctx, const Term& term, const std::string& path) const {
    if (const auto* f = as_free(term)) {
      if (const Type* type = ctx.lookup_term(f->name)) return *type;
      fail(TypeErrorKind::UnboundVariable, path, "term variable " + f->name);
    }
    if (as_bottom(term)) return Type::omega();
    if (const auto* i = as_imp(term)) {
      Type lhs = infer(ctx, i->lhs, at(path, "lhs"));
      if (!lhs.is_omega())
        fail(TypeErrorKind::KindMismatch, at(path, "lhs"),
             "operand of => has type " + print(lhs) + ", expected Omega");
      Type rhs = infer(ctx, i->rhs, at(path, "rhs"));
      if (!rhs.is_omega())
        fail(TypeErrorKind::KindMismatch, at(path, "rhs"),
             "operand of => has type " + print(rhs) + ", expected Omega");
      return Type::omega();
    }
    if (const auto* l = as_lam(term)) {
      std::string x = fresh_in(ctx, l->hint, "x", free_vars(l->body));
      Context extended = ctx.extended(TermDecl{x, l->ann});
      Type body = infer(extended, open_body(*l, Term::var(x)), at(path, "body"));
      return Type::arrow(l->ann, body);
    }
    if (const auto* a = as_app(term)) {
      Type fun = infer(ctx, a->fun, at(path, "fun"));
      if (!fun.is_arrow())
        fail(TypeErrorKind::NotAnArrow, at(path, "fun"),
             "applied term has type " + print(fun));
      Type arg = infer(ctx, a->arg, at(path, "arg"));
      if (arg != fun.domain())
        fail(TypeErrorKind::KindMismatch, at(path, "arg"),
             "argument has type " + print(arg) + ", expected " + print(fun.domain()));
      return fun.codomain();
    }
    fail(TypeErrorKind::UnboundVariable, path, "dangling bound term variable");
  }

  // ---- proofs ----

  Term infer(const Context& ctx, const Proof& proof, const std::string& path) const {
    if (const auto* f = as_free(proof)) {
      if (const Term* prop = ctx.lookup_proof(f->name)) return *prop;
      fail(TypeErrorKind::UnboundVariable, path, "proof variable " + f->name);
    }
    if (const auto* l = as_lam(proof)) {
      Type ann_type = infer(ctx, l->ann, at(path, "ann"));
      if (!ann_type.is_omega())
        fail(TypeErrorKind::KindMismatch, at(path, "ann"),
             "proof binder annotation has type " + print(ann_type) + ", expected Omega");
      std::string p = fresh_in(ctx, l->hint, "p", free_vars(l->body));
      Context extended = ctx.extended(ProofDecl{p, l->ann});
      Term body = infer(extended, open_body(*l, Proof::var(p)), at(path, "body"));
      return Term::imp(l->ann, body);
    }
    if (const auto* a = as_app(proof)) {
      Term fun_prop = infer(ctx, a->fun, at(path, "fun"));
      ReductionOutcome normal = normalize_term(fun_prop, options.fuel);
      if (normal.status == NormalStatus::FuelExhausted)
        fail(TypeErrorKind::FuelExhausted, at(path, "fun"),
             "normalizing proposition " + print(fun_prop));
      Term head = normal_form_of_term(normal);
      const auto* imp = as_imp(head);
      if (!imp)
        fail(TypeErrorKind::NotAnImplication, at(path, "fun"),
             "applied proof proves " + print(head));
      Term arg_prop = infer(ctx, a->arg, at(path, "arg"));
      if (!convertible_or_fail(arg_prop, imp->lhs, at(path, "arg")))
        fail(TypeErrorKind::NotConvertible, at(path, "arg"),
             "argument proves " + print(arg_prop) + ", expected " + print(imp->lhs));
      return imp->rhs;
    }
    if (const auto* pl = as_plus(proof)) {
      Equation eq = infer(ctx, pl->path, at(path, "path"));
      if (!eq.type.is_omega())
        fail(TypeErrorKind::NotOmegaEquation, at(path, "path"),
             "^+ needs an equation at Omega, got " + print(eq));
      return Term::imp(eq.lhs, eq.rhs);
    }
    if (const auto* mi = as_minus(proof)) {
      Equation eq = infer(ctx, mi->path, at(path, "path"));
      if (!eq.type.is_omega())
        fail(TypeErrorKind::NotOmegaEquation, at(path, "path"),
             "^- needs an equation at Omega, got " + print(eq));
      return Term::imp(eq.rhs, eq.lhs);
    }
    fail(TypeErrorKind::UnboundVariable, path, "dangling bound proof variable");
  }

  // ---- paths ----

  Equation infer(const Context& ctx, const Path& p, const std::string& path) const {
    if (const auto* f = as_free(p)) {
      if (const Equation* eq = ctx.lookup_path(f->name)) return *eq;
      fail(TypeErrorKind::UnboundVariable, path, "path variable " + f->name);
    }
    if (const auto* r = as_ref(p)) {
      Type type = infer(ctx, r->term, at(path, "ref"));
      return Equation{r->term, type, r->term};
    }
    if (const auto* s = as_imp_star(p)) {
      Equation lhs = infer(ctx, s->lhs, at(path, "lhs"));
      if (!lhs.type.is_omega())
        fail(TypeErrorKind::NotOmegaEquation, at(path, "lhs"),
             "operand of =>* proves " + print(lhs));
      Equation rhs = infer(ctx, s->rhs, at(path, "rhs"));
      if (!rhs.type.is_omega())
        fail(TypeErrorKind::NotOmegaEquation, at(path, "rhs"),
             "operand of =>* proves " + print(rhs));
      return Equation{Term::imp(lhs.lhs, rhs.lhs), Type::omega(),
                      Term::imp(lhs.rhs, rhs.rhs)};
    }
    if (const auto* u = as_univ(p)) {
      Type src = infer(ctx, u->src, at(path, "src"));
      if (!src.is_omega())
        fail(TypeErrorKind::KindMismatch, at(path, "src"),
             "univ component has type " + print(src) + ", expected Omega");
      Type tgt = infer(ctx, u->tgt, at(path, "tgt"));
      if (!tgt.is_omega())
        fail(TypeErrorKind::KindMismatch, at(path, "tgt"),
             "univ component has type " + print(tgt) + ", expected Omega");
      check(ctx, u->fwd, Term::imp(u->src, u->tgt), at(path, "fwd"));
      check(ctx, u->bwd, Term::imp(u->tgt, u->src), at(path, "bwd"));
      return Equation{u->src, Type::omega(), u->tgt};
    }
    if (const auto* t = as_tri_lam(p)) return infer_tri_lam(ctx, *t, path);
    if (const auto* a = as_path_app(p)) {
      Equation fun = infer(ctx, a->fun, at(path, "fun"));
      if (!fun.type.is_arrow())
        fail(TypeErrorKind::NotAnArrow, at(path, "fun"),
             "applied path proves " + print(fun));
      const Type& domain = fun.type.domain();
      Type left = infer(ctx, a->left, at(path, "left"));
      if (left != domain)
        fail(TypeErrorKind::KindMismatch, at(path, "left"),
             "endpoint annotation has type " + print(left) + ", expected " +
                 print(domain));
      Type right = infer(ctx, a->right, at(path, "right"));
      if (right != domain)
        fail(TypeErrorKind::KindMismatch, at(path, "right"),
             "endpoint annotation has type " + print(right) + ", expected " +
                 print(domain));
      Equation arg = infer(ctx, a->arg, at(path, "arg"));
      if (arg.type != domain)
        fail(TypeErrorKind::KindMismatch, at(path, "arg"),
             "path argument proves " + print(arg) + ", expected an equation at " +
                 print(domain));
      if (!convertible_or_fail(arg.lhs, a->left, at(path, "arg")))
        fail(TypeErrorKind::EndpointMismatch, at(path, "arg"),
             "argument starts at " + print(arg.lhs) + ", annotation says " +
                 print(a->left));
      if (!convertible_or_fail(arg.rhs, a->right, at(path, "arg")))
        fail(TypeErrorKind::EndpointMismatch, at(path, "arg"),
             "argument ends at " + print(arg.rhs) + ", annotation says " +
                 print(a->right));
      return Equation{Term::app(fun.lhs, a->left), fun.type.codomain(),
                      Term::app(fun.rhs, a->right)};
    }
    fail(TypeErrorKind::UnboundVariable, path, "dangling bound path variable");
  }

  // Synthesis for lll e : x =[A] y . P.  The equation proved by the body is
  // normalized on both sides; a side of the shape  M x  with x not free in M
  // contributes M directly, any other side S contributes \x:A.S, provided the
  // side only mentions its own bound endpoint variable.
  Equation infer_tri_lam(const Context& ctx, const PathTriLam& tri,
                         const std::string& path) const {
    FreeVars fv = free_vars(tri.body);
    std::string x = fresh_in(ctx, tri.hint_x, "x", fv);
    std::string y = fresh_name(tri.hint_y.empty() ? "y" : tri.hint_y,
                               [&] {
                                 std::set<std::string> avoid = ctx.all_names();
                                 avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
                                 avoid.insert(x);
                                 return avoid;
                               }());
    std::string e = fresh_in(ctx, tri.hint_e, "e", fv);
    Context extended = ctx.extended(TermDecl{x, tri.ann})
                           .extended(TermDecl{y, tri.ann})
                           .extended(PathDecl{
                               e, Equation{Term::var(x), tri.ann, Term::var(y)}});
    Equation body =
        infer(extended, open_body(tri, Path::var(e), Term::var(x), Term::var(y)),
              at(path, "body"));

    auto side = [&](const Term& subject, const std::string& own,
                    const std::string& other, const char* segment) {
      ReductionOutcome normal = normalize_term(subject, options.fuel);
      if (normal.status == NormalStatus::FuelExhausted)
        fail(TypeErrorKind::FuelExhausted, at(path, segment),
             "normalizing equation side " + print(subject));
      Term reduced = normal_form_of_term(normal);
      FreeVars side_fv = free_vars(reduced);
      if (side_fv.term_vars.count(other))
        fail(TypeErrorKind::TriLamShapeError, at(path, segment),
             "equation side " + print(reduced) + " mentions the wrong bound variable");
      if (const auto* app = as_app(reduced)) {
        const auto* var = as_free(app->arg);
        if (var && var->name == own && !free_vars(app->fun).term_vars.count(own))
          return app->fun;
      }
      return Term::lam(own, tri.ann, reduced);
    };

    Term lhs = side(body.lhs, x, y, "lhs");
    Term rhs = side(body.rhs, y, x, "rhs");
    return Equation{lhs, Type::arrow(tri.ann, body.type), rhs};
  }

  // ---- checking ----

  void check(const Context& ctx, const Proof& proof, const Term& prop,
             const std::string& path) const {
    Term inferred = infer(ctx, proof, path);
    if (!convertible_or_fail(inferred, prop, path))
      fail(TypeErrorKind::NotConvertible, path,
           "proof proves " + print(inferred) + ", expected " + print(prop));
  }

  void check(const Context& ctx, const Path& p, const Equation& eq,
             const std::string& path) const {
    // Triple-lambdas are checked bidirectionally: the body is checked against
    // the expected equation applied to the bound endpoint variables.
    if (const auto* tri = as_tri_lam(p)) {
      if (!eq.type.is_arrow())
        fail(TypeErrorKind::KindMismatch, path,
             "lll checked against an equation at " + print(eq.type));
      if (tri->ann != eq.type.domain())
        fail(TypeErrorKind::KindMismatch, path,
             "lll binds at " + print(tri->ann) + ", equation is at " + print(eq.type));
      Type lhs_type = infer(ctx, eq.lhs, path);
      if (lhs_type != eq.type)
        fail(TypeErrorKind::KindMismatch, path,
             "equation endpoint " + print(eq.lhs) + " has type " + print(lhs_type));
      Type rhs_type = infer(ctx, eq.rhs, path);
      if (rhs_type != eq.type)
        fail(TypeErrorKind::KindMismatch, path,
             "equation endpoint " + print(eq.rhs) + " has type " + print(rhs_type));

      FreeVars fv = free_vars(tri->body);
      fv.merge(free_vars(eq.lhs));
      fv.merge(free_vars(eq.rhs));
      std::string x = fresh_in(ctx, tri->hint_x, "x", fv);
      std::string y = fresh_name(tri->hint_y.empty() ? "y" : tri->hint_y, [&] {
        std::set<std::string> avoid = ctx.all_names();
        avoid.insert(fv.term_vars.begin(), fv.term_vars.end());
        avoid.insert(x);
        return avoid;
      }());
      std::string e = fresh_in(ctx, tri->hint_e, "e", fv);
      Context extended = ctx.extended(TermDecl{x, tri->ann})
                             .extended(TermDecl{y, tri->ann})
                             .extended(PathDecl{
                                 e, Equation{Term::var(x), tri->ann, Term::var(y)}});
      Equation expected{Term::app(eq.lhs, Term::var(x)), eq.type.codomain(),
                        Term::app(eq.rhs, Term::var(y))};
      check(extended, open_body(*tri, Path::var(e), Term::var(x), Term::var(y)),
            expected, at(path, "body"));
      return;
    }

    Equation inferred = infer(ctx, p, path);
    if (inferred.type != eq.type)
      fail(TypeErrorKind::KindMismatch, path,
           "path proves an equation at " + print(inferred.type) + ", expected " +
               print(eq.type));
    if (!convertible_or_fail(inferred.lhs, eq.lhs, path))
      fail(TypeErrorKind::NotConvertible, path,
           "path starts at " + print(inferred.lhs) + ", expected " + print(eq.lhs));
    if (!convertible_or_fail(inferred.rhs, eq.rhs, path))
      fail(TypeErrorKind::NotConvertible, path,
           "path ends at " + print(inferred.rhs) + ", expected " + print(eq.rhs));
  }
};

}  // namespace

void check_context(const Context& ctx, const CheckOptions& options) {
  Checker checker{options};
  Context prefix;
  for (const ContextEntry& entry : ctx.entries()) {
    try {
      if (const auto* d = std::get_if<ProofDecl>(&entry)) {
        Type type = checker.infer(prefix, d->prop, "");
        if (!type.is_omega())
          fail(TypeErrorKind::KindMismatch, "",
               "assumption " + d->name + " : " + print(d->prop) + " has type " +
                   print(type) + ", expected Omega");
      } else if (const auto* d = std::get_if<PathDecl>(&entry)) {
        Type lhs = checker.infer(prefix, d->eq.lhs, "");
        if (lhs != d->eq.type)
          fail(TypeErrorKind::KindMismatch, "",
               "equation side " + print(d->eq.lhs) + " has type " + print(lhs) +
                   ", expected " + print(d->eq.type));
        Type rhs = checker.infer(prefix, d->eq.rhs, "");
        if (rhs != d->eq.type)
          fail(TypeErrorKind::KindMismatch, "",
               "equation side " + print(d->eq.rhs) + " has type " + print(rhs) +
                   ", expected " + print(d->eq.type));
      }
    } catch (const TypeError& error) {
      const std::string& name =
          std::visit([](const auto& d) -> const std::string& { return d.name; }, entry);
      throw TypeError(TypeErrorKind::ContextIllFormed, name, error.render());
    }
    prefix = prefix.extended(entry);
  }
}

Type infer_type(const Context& ctx, const Term& term, const CheckOptions& options) {
  return Checker{options}.infer(ctx, term, "");
}

Term infer_prop(const Context& ctx, const Proof& proof, const CheckOptions& options) {
  return Checker{options}.infer(ctx, proof, "");
}

Equation infer_equation(const Context& ctx, const Path& path,
                        const CheckOptions& options) {
  return Checker{options}.infer(ctx, path, "");
}

void check_proof(const Context& ctx, const Proof& proof, const Term& prop,
                 const CheckOptions& options) {
  Checker{options}.check(ctx, proof, prop, "");
}

void check_path(const Context& ctx, const Path& path, const Equation& eq,
                const CheckOptions& options) {
  Checker{options}.check(ctx, path, eq, "");
}

void check_judgement(const Judgement& judgement, const CheckOptions& options) {
  check_context(judgement.context, options);
  if (const auto* j = std::get_if<JudgementTerm>(&judgement.body)) {
    Type type = infer_type(judgement.context, j->subject, options);
    if (type != j->classifier)
      fail(TypeErrorKind::KindMismatch, "",
           "term has type " + print(type) + ", expected " + print(j->classifier));
  } else if (const auto* j = std::get_if<JudgementProof>(&judgement.body)) {
    check_proof(judgement.context, j->subject, j->classifier, options);
  } else if (const auto* j = std::get_if<JudgementPath>(&judgement.body)) {
    check_path(judgement.context, j->subject, j->classifier, options);
  }
}

}  // namespace phoml
