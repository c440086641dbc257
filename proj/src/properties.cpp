#include "phoml/properties.hpp"

#include <functional>
#include <stdexcept>

#include "phoml/parallel_reduction.hpp"
#include "phoml/printer.hpp"
#include "phoml/reduction.hpp"
#include "phoml/script.hpp"
#include "phoml/substitution.hpp"

namespace phoml {

std::string PropertyVerdict::render() const {
  std::string out = "PROP " + name + " cases=" + std::to_string(cases) +
                    " failures=" + std::to_string(failures.size());
  for (const PropertyFailure& failure : failures) {
    out += "\nFAIL seed=" + std::to_string(failure.seed);
    if (!failure.description.empty()) out += " " + failure.description;
    if (!failure.minimized.empty()) out += "\n  minimized: " + failure.minimized;
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Shrinking: same-class subexpressions, then leaf replacements
// ---------------------------------------------------------------------------

void subterms_of(const Term& t, std::vector<Term>& out);
void subpaths_of(const Path& p, std::vector<Path>& out);
void subproofs_of(const Proof& p, std::vector<Proof>& out);

void subterms_of(const Term& t, std::vector<Term>& out) {
  if (const auto* i = as_imp(t)) {
    out.push_back(i->lhs);
    out.push_back(i->rhs);
    subterms_of(i->lhs, out);
    subterms_of(i->rhs, out);
  } else if (const auto* a = as_app(t)) {
    out.push_back(a->fun);
    out.push_back(a->arg);
    subterms_of(a->fun, out);
    subterms_of(a->arg, out);
  }
}

void subproofs_of(const Proof& p, std::vector<Proof>& out) {
  if (const auto* a = as_app(p)) {
    out.push_back(a->fun);
    out.push_back(a->arg);
    subproofs_of(a->fun, out);
    subproofs_of(a->arg, out);
  }
}

void subpaths_of(const Path& p, std::vector<Path>& out) {
  if (const auto* s = as_imp_star(p)) {
    out.push_back(s->lhs);
    out.push_back(s->rhs);
    subpaths_of(s->lhs, out);
    subpaths_of(s->rhs, out);
  } else if (const auto* a = as_path_app(p)) {
    out.push_back(a->fun);
    out.push_back(a->arg);
    subpaths_of(a->fun, out);
    subpaths_of(a->arg, out);
  }
}

std::vector<Expr> shrink_candidates(const Expr& e) {
  std::vector<Expr> out;
  if (const auto* t = std::get_if<Term>(&e)) {
    std::vector<Term> subs;
    subterms_of(*t, subs);
    for (Term& s : subs) out.push_back(Expr{std::move(s)});
  } else if (const auto* p = std::get_if<Proof>(&e)) {
    std::vector<Proof> subs;
    subproofs_of(*p, subs);
    for (Proof& s : subs) out.push_back(Expr{std::move(s)});
  } else {
    std::vector<Path> subs;
    subpaths_of(std::get<Path>(e), subs);
    for (Path& s : subs) out.push_back(Expr{std::move(s)});
  }
  return out;
}

int expr_size(const Expr& e) { return static_cast<int>(alpha_key(e).size()); }

// Greedy minimization by structural descent while the failure persists.
Expr minimize(const Expr& start, const std::function<bool(const Expr&)>& fails) {
  Expr current = start;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (const Expr& candidate : shrink_candidates(current)) {
      if (expr_size(candidate) < expr_size(current) && fails(candidate)) {
        current = candidate;
        progressed = true;
        break;
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Case plumbing
// ---------------------------------------------------------------------------

struct Runner {
  PropertyVerdict verdict;
  const GenConfig& base;

  void fail(std::uint64_t seed, std::string description, std::string minimized = "") {
    verdict.failures.push_back({seed, std::move(description), std::move(minimized)});
  }
};

bool classification_matches(const Context& ctx, const Expr& expr,
                            const Classifier& classifier, const CheckOptions& options) {
  return verify_sample(ctx, TypedSample{expr, classifier}, options);
}

ExprClass sort_for_case(int index) {
  switch (index % 3) {
    case 0: return ExprClass::Term;
    case 1: return ExprClass::Proof;
    default: return ExprClass::Path;
  }
}

std::optional<TypedSample> sample_for(ExprClass sort, const Context& ctx,
                                      std::uint64_t seed, int size) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.size = size;
  return gen_typed(sort, ctx, cfg);
}

// ---------------------------------------------------------------------------
// The registered properties
// ---------------------------------------------------------------------------

void property_subject_reduction(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Context ctx = gen_context(rng, run.base, true);
    ExprClass sort = sort_for_case(i);
    auto sample = sample_for(sort, ctx, seed, run.base.size);
    ++run.verdict.cases;
    if (!sample) continue;
    CheckOptions options{kPropertyFuel};
    Expr current = sample->expr;
    for (int step = 0; step < 20; ++step) {
      auto next = step_cbn(current);
      if (!next) break;
      current = next->expr;
      if (!classification_matches(ctx, current, sample->classifier, options)) {
        run.fail(seed, "reduct " + print(current) + " lost classification " +
                           render_classifier(sample->classifier) + " (rule " +
                           next->rule + ")");
        break;
      }
    }
  }
}

void property_confluence_step(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Expr expr = gen_raw_expr(rng, 3 + rng.below(10), run.base.leaf_bias);
    ++run.verdict.cases;
    std::vector<Expr> reducts = step_all(expr);
    for (std::size_t a = 0; a < reducts.size(); ++a)
      for (std::size_t b = a + 1; b < reducts.size(); ++b)
        if (!joinable(reducts[a], reducts[b])) {
          auto fails = [&](const Expr& candidate) {
            std::vector<Expr> rs = step_all(candidate);
            for (std::size_t x = 0; x < rs.size(); ++x)
              for (std::size_t y = x + 1; y < rs.size(); ++y)
                if (!joinable(rs[x], rs[y])) return true;
            return false;
          };
          run.fail(seed,
                   "branches of " + print(expr) + " do not rejoin: " +
                       print(reducts[a]) + " vs " + print(reducts[b]),
                   print(minimize(expr, fails)));
          goto next_case;
        }
  next_case:;
  }
}

void property_diamond(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Expr expr = gen_raw_expr(rng, 3 + rng.below(10), run.base.leaf_bias);
    ++run.verdict.cases;
    DiamondCheck check = check_diamond(expr);
    if (check.overflow) continue;
    for (const DiamondReport& report : check.reports) {
      if (report.verdict == DiamondReport::Verdict::CounterexampleCandidate) {
        auto fails = [&](const Expr& candidate) {
          DiamondCheck c = check_diamond(candidate);
          if (c.overflow) return false;
          for (const DiamondReport& r : c.reports)
            if (r.verdict == DiamondReport::Verdict::CounterexampleCandidate)
              return true;
          return false;
        };
        run.fail(seed,
                 render_diamond_line(report, seed) + " branches " +
                     print(report.branch1) + " and " + print(report.branch2) +
                     " of " + print(expr),
                 print(minimize(expr, fails)));
        break;
      }
    }
  }
}

PathSubstitution without(const PathSubstitution& tau, const std::string& name) {
  PathSubstitution out;
  for (const auto& [var, binding] : tau.bindings())
    if (var != name) out.set(var, binding);
  return out;
}

void property_subst_pathsubst_i(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Term m = gen_raw_term(rng, 3 + rng.below(8), run.base.leaf_bias);
    Term n = gen_raw_term(rng, 1 + rng.below(5));
    std::string x = "x";
    PathSubstitution tau = without(gen_raw_path_substitution(rng, 4), x);
    ++run.verdict.cases;

    Path lhs = path_subst(subst(m, Substitution::term(x, n)), tau);
    PathSubstitution extended = tau;
    extended.set(x, PathBinding{path_subst(n, tau), subst(n, tau.left_substitution()),
                                subst(n, tau.right_substitution())});
    Path rhs = path_subst(m, extended);
    if (!alpha_equal(lhs, rhs))
      run.fail(seed, "substitution-then-path-substitution differs on " + print(m) +
                         ": " + print(lhs) + " vs " + print(rhs));
  }
}

void property_subst_pathsubst_ii(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Term m = gen_raw_term(rng, 3 + rng.below(8), run.base.leaf_bias);
    Term n = gen_raw_term(rng, 1 + rng.below(5));
    std::string x = "x";
    PathSubstitution tau = without(gen_raw_path_substitution(rng, 4), x);
    ++run.verdict.cases;

    Substitution by_n = Substitution::term(x, n);
    Path lhs = subst(path_subst(m, tau), by_n);
    PathSubstitution substituted;
    for (const auto& [var, binding] : tau.bindings())
      substituted.set(var, PathBinding{subst(binding.path, by_n),
                                       subst(binding.left, by_n),
                                       subst(binding.right, by_n)});
    substituted.set(x, PathBinding{Path::ref(n), n, n});
    Path rhs = path_subst(m, substituted);
    if (!alpha_equal(lhs, rhs))
      run.fail(seed, "path-substitution-then-substitution differs on " + print(m) +
                         ": " + print(lhs) + " vs " + print(rhs));
  }
}

void property_resp_pathsub(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    ++run.verdict.cases;
    Term m = gen_raw_term(rng, 4 + rng.below(7));
    auto step = step_cbn(Expr{m});
    for (int retry = 0; retry < 5 && !step; ++retry) {
      m = gen_raw_term(rng, 4 + rng.below(7));
      step = step_cbn(Expr{m});
    }
    if (!step) continue;
    Term n = std::get<Term>(step->expr);
    PathSubstitution tau = gen_raw_path_substitution(rng, 4);
    Path lhs = path_subst(m, tau);
    Path rhs = path_subst(n, tau);
    if (!joinable(Expr{lhs}, Expr{rhs}))
      run.fail(seed, "path substitution images of " + print(m) + " -> " + print(n) +
                         " do not rejoin");
  }
}

void property_typed_pathsub(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    ++run.verdict.cases;

    // A source context of term variables only.
    Context source;
    int vars = 1 + rng.below(3);
    for (int v = 0; v < vars; ++v)
      source = source.extended(
          TermDecl{fresh_name("v", source.all_names()), gen_raw_type(rng, 3)});
    Type type = gen_raw_type(rng, 3);
    Term m = gen_term_of_type(rng, source, type, run.base.size);

    // A target context plus one generated path per source variable.
    Context target = gen_context(rng, run.base, true);
    PathSubstitution tau;
    bool complete = true;
    for (const ContextEntry& entry : source.entries()) {
      const auto& decl = std::get<TermDecl>(entry);
      auto path = gen_path_at_type(rng, target, decl.type, 4);
      if (!path) {
        complete = false;
        break;
      }
      tau.set(decl.name, PathBinding{path->first, path->second.lhs, path->second.rhs});
    }
    if (!complete) continue;

    Term left = subst(m, tau.left_substitution());
    Term right = subst(m, tau.right_substitution());
    try {
      check_path(target, path_subst(m, tau), Equation{left, type, right},
                 CheckOptions{kPropertyFuel});
    } catch (const TypeError& error) {
      run.fail(seed, "typed path substitution on " + print(m) +
                         " rejected: " + error.render());
    }
  }
}

void property_weakening(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Context ctx = gen_context(rng, run.base, true);
    ExprClass sort = sort_for_case(i);
    auto sample = sample_for(sort, ctx, seed, run.base.size);
    ++run.verdict.cases;
    if (!sample) continue;

    // Insert fresh declarations at random positions.
    std::vector<ContextEntry> entries = ctx.entries();
    int inserts = 1 + rng.below(2);
    for (int k = 0; k < inserts; ++k) {
      std::size_t position = rng.below(static_cast<int>(entries.size()) + 1);
      Context prefix;
      for (std::size_t j = 0; j < position; ++j) prefix = prefix.extended(entries[j]);
      std::set<std::string> taken;
      for (const ContextEntry& entry : entries)
        taken.insert(
            std::visit([](const auto& d) -> std::string { return d.name; }, entry));
      std::string name = fresh_name("w", taken);
      ContextEntry fresh =
          rng.chance(1, 2)
              ? ContextEntry{TermDecl{name, gen_raw_type(rng, 3)}}
              : ContextEntry{ProofDecl{name,
                                       gen_term_of_type(rng, prefix, Type::omega(), 3)}};
      entries.insert(entries.begin() + static_cast<std::ptrdiff_t>(position), fresh);
    }
    Context widened;
    for (const ContextEntry& entry : entries) widened = widened.extended(entry);

    if (!classification_matches(widened, sample->expr, sample->classifier,
                                CheckOptions{kPropertyFuel}))
      run.fail(seed, "widening the context changed the verdict for " +
                         print(sample->expr));
  }
}

void property_canonicity_closed(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    bool closed_regime = i % 2 == 0;
    Context ctx = closed_regime ? Context{} : gen_context(rng, run.base, false);
    ExprClass sort = i % 4 < 2 ? ExprClass::Proof : ExprClass::Path;
    auto sample = sample_for(sort, ctx, seed, run.base.size);
    ++run.verdict.cases;
    if (!sample) continue;

    ReductionOutcome outcome = reduce(sample->expr, kDefaultFuel);
    if (outcome.status == NormalStatus::FuelExhausted) {
      run.fail(seed, "normalization of " + print(sample->expr) + " ran out of fuel");
      continue;
    }
    bool ok = closed_regime ? outcome.status == NormalStatus::NormalCanonical
                            : outcome.status == NormalStatus::NormalCanonical ||
                                  outcome.status == NormalStatus::NormalNeutral;
    if (!ok)
      run.fail(seed, "normal form " + print(outcome.result) + " of " +
                         print(sample->expr) + " classifies " +
                         to_string(outcome.status));
  }
}

void property_weak_normalization(Runner& run, int cases) {
  for (int i = 0; i < cases; ++i) {
    std::uint64_t seed = run.base.seed + static_cast<std::uint64_t>(i);
    Rng rng(seed);
    Context ctx = gen_context(rng, run.base, false);
    ExprClass sort = sort_for_case(i);
    auto sample = sample_for(sort, ctx, seed, run.base.size);
    ++run.verdict.cases;
    if (!sample) continue;

    ReductionOutcome outcome = reduce(sample->expr, kDefaultFuel);
    if (outcome.status == NormalStatus::FuelExhausted) {
      run.fail(seed, "normalization of " + print(sample->expr) + " ran out of fuel");
      continue;
    }
    bool ok = false;
    if (const auto* term = std::get_if<Term>(&outcome.result)) {
      // Terms in these contexts are closed: canonical proposition or lambda.
      ok = outcome.status == NormalStatus::NormalCanonical || as_lam(*term) != nullptr;
    } else {
      ok = outcome.status == NormalStatus::NormalCanonical ||
           outcome.status == NormalStatus::NormalNeutral;
    }
    if (!ok)
      run.fail(seed, "normal form " + print(outcome.result) + " of " +
                         print(sample->expr) + " is neither canonical nor neutral");
  }
}

}  // namespace

const std::vector<std::string>& registered_properties() {
  static const std::vector<std::string> names = {
      "subject-reduction", "confluence-step",   "diamond",
      "subst-pathsubst-i", "subst-pathsubst-ii", "resp-pathsub",
      "typed-pathsub",     "weakening",          "canonicity-closed",
      "weak-normalization",
  };
  return names;
}

PropertyVerdict run_property(const std::string& name, int cases, const GenConfig& cfg) {
  Runner run{PropertyVerdict{name}, cfg};
  if (name == "subject-reduction") {
    property_subject_reduction(run, cases);
  } else if (name == "confluence-step") {
    property_confluence_step(run, cases);
  } else if (name == "diamond") {
    property_diamond(run, cases);
  } else if (name == "subst-pathsubst-i") {
    property_subst_pathsubst_i(run, cases);
  } else if (name == "subst-pathsubst-ii") {
    property_subst_pathsubst_ii(run, cases);
  } else if (name == "resp-pathsub") {
    property_resp_pathsub(run, cases);
  } else if (name == "typed-pathsub") {
    property_typed_pathsub(run, cases);
  } else if (name == "weakening") {
    property_weakening(run, cases);
  } else if (name == "canonicity-closed") {
    property_canonicity_closed(run, cases);
  } else if (name == "weak-normalization") {
    property_weak_normalization(run, cases);
  } else {
    throw std::invalid_argument("unknown property: " + name);
  }
  return run.verdict;
}

std::string ConsistencyReport::render() const {
  std::string out = "CONSISTENCY size<=" + std::to_string(max_size) +
                    " proofs=" + std::to_string(proofs_enumerated) +
                    " hits=" + std::to_string(hits.size());
  for (const Proof& hit : hits) out += "\nHIT " + print(hit);
  return out;
}

ConsistencyReport bounded_consistency_search(int max_size) {
  if (max_size > 14)
    throw std::invalid_argument("bounded consistency search is capped at size 14");
  ConsistencyReport report;
  report.max_size = max_size;
  for (const Proof& proof : enumerate_closed_proofs(max_size)) {
    ++report.proofs_enumerated;
    try {
      Term prop = infer_prop(Context{}, proof, CheckOptions{kPropertyFuel});
      if (convertible(prop, Term::bottom(), kPropertyFuel).value_or(false))
        report.hits.push_back(proof);
    } catch (const TypeError&) {
    }
  }
  return report;
}

}  // namespace phoml
