// Acceptance suite: one pass/fail line per criterion, each at its stated
// count and tolerance.  Exits nonzero if any criterion fails.

#include <chrono>
#include <iostream>
#include <vector>

#include "phoml/parallel_reduction.hpp"
#include "phoml/printer.hpp"
#include "phoml/properties.hpp"
#include "phoml/script.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace phoml;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> results;

struct Reporter {
  Criterion criterion;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Reporter(int number, std::string name) : criterion{number, std::move(name)} {}

  void require(bool condition, const std::string& message) {
    if (!condition && criterion.pass) {
      criterion.pass = false;
      criterion.detail = message;
    }
  }

  void finish() {
    criterion.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "ACCEPT " << criterion.number << " " << criterion.name << ": "
              << (criterion.pass ? "PASS" : "FAIL") << " ("
              << static_cast<int>(criterion.seconds * 1000) << " ms"
              << (criterion.detail.empty() ? "" : "; " + criterion.detail) << ")\n";
    std::cout.flush();
    results.push_back(criterion);
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void require_property(Reporter& reporter, const std::string& name, int cases,
                      std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.size = 8;
  PropertyVerdict verdict = run_property(name, cases, cfg);
  reporter.require(verdict.ok(), verdict.render());
}

// --------------------------------------------------------------------------

void criterion_1_golden_computation(const fs::path& scripts_dir) {
  Reporter reporter(1, "transport computation script");
  Script script =
      parse_script(read_file(scripts_dir / "select_first.phoml"), "select_first.phoml");
  ScriptRun run = run_script(script);
  reporter.require(run.fatal.empty(), "script aborted: " + run.fatal);
  for (const DirectiveOutput& output : run.outputs)
    if (output.kind == "check")
      reporter.require(output.ok, "check " + std::to_string(output.index) +
                                      " failed: " + output.text);

  auto normalized = normalize_definition(script, "output");
  reporter.require(normalized.has_value(), "no definition named output");
  if (normalized) {
    reporter.require(normalized->status == NormalStatus::NormalCanonical,
                     "normal form is " + to_string(normalized->status));
    Expr stated = parse_expression(
        "\\m:bot => bot. \\n:bot => bot. ref(bot => bot)^- m");
    reporter.require(
        alpha_equal(normalized->result, stated),
        "normal form is " + print(normalized->result) + ", stated target is " +
            print(stated) +
            " (the relation cannot reduce the substituted trivial loop of"
            " bot => bot to ref(bot => bot) in argument position)");
  }

  auto applied = normalize_definition(script, "applied");
  reporter.require(applied.has_value(), "no definition named applied");
  if (applied)
    reporter.require(alpha_equal(applied->result,
                                 Expr{Proof::var("u")}),
                     "application does not select the first proof: " +
                         print(applied->result));
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - reporter.start)
          .count();
  reporter.require(elapsed < 1.0, "exceeded the stated 1 second budget");
  reporter.finish();
}

void criterion_2_respect_equivalence(const fs::path& scripts_dir) {
  Reporter reporter(2, "functions respect logical equivalence");
  Script script = parse_script(read_file(scripts_dir / "respect_equiv.phoml"),
                               "respect_equiv.phoml");
  ScriptRun run = run_script(script);
  reporter.require(run.fatal.empty() && run.ok, "script failed");

  Context ctx;
  ctx = ctx.extended(TermDecl{"f", Type::arrow(Type::omega(), Type::omega())});
  ctx = ctx.extended(TermDecl{"x", Type::omega()});
  ctx = ctx.extended(TermDecl{"y", Type::omega()});
  ctx = ctx.extended(ProofDecl{"p", Term::imp(Term::var("x"), Term::var("y"))});
  ctx = ctx.extended(ProofDecl{"q", Term::imp(Term::var("y"), Term::var("x"))});
  Term fx_fy = parse_term("f x => f y", ctx);
  Term fy_fx = parse_term("f y => f x", ctx);
  Term forward =
      infer_prop(ctx, parse_proof("(ref(f) @[x, y] univ(x, y, p, q))^+", ctx));
  Term backward =
      infer_prop(ctx, parse_proof("(ref(f) @[x, y] univ(x, y, p, q))^-", ctx));
  reporter.require(convertible(forward, fx_fy, kDefaultFuel).value_or(false),
                   "forward transport proves " + print(forward));
  reporter.require(convertible(backward, fy_fx, kDefaultFuel).value_or(false),
                   "backward transport proves " + print(backward));
  reporter.finish();
}

void criterion_3_negative_fixture() {
  Reporter reporter(3, "substitution does not commute with path reduction");
  Context ctx = Context{}.extended(TermDecl{"y'", Type::omega()});
  Path before = parse_path("ref(\\y:Omega. y') @[bot, bot] ref(bot)", ctx);
  Path display1 = subst(before, Substitution::term("y'", parse_term("\\x:Omega. x")));
  ReductionOutcome outcome = reduce(Expr{display1}, 100);
  Path eta = parse_path("lll e : x =[Omega] x' . e");
  reporter.require(alpha_equal(outcome.result, Expr{eta}),
                   "normalizes to " + print(outcome.result));
  Path display2 = parse_path("ref(\\x:Omega. x)");
  reporter.require(!alpha_equal(outcome.result, Expr{display2}),
                   "unexpectedly reached ref(\\x:Omega. x)");
  reporter.require(!joinable(Expr{display1}, Expr{display2}),
                   "the displays are joinable but must not be");
  reporter.finish();
}

void criterion_4_redex_matrix() {
  Reporter reporter(4, "one fixture per top-level redex rule");
  Context ctx = Context{}
                    .extended(ProofDecl{"d", Term::bottom()})
                    .extended(ProofDecl{"c", Term::bottom()})
                    .extended(ProofDecl{"d2", Term::bottom()})
                    .extended(ProofDecl{"c2", Term::bottom()})
                    .extended(PathDecl{"k", Equation{Term::bottom(), Type::omega(),
                                                     Term::bottom()}});
  struct Fixture {
    const char* rule;
    const char* redex;
    const char* contractum;
  };
  const Fixture fixtures[] = {
      {"beta", "(\\x:Omega. x => x) bot", "bot => bot"},
      {"beta-proof", "(\\p:bot. p) d", "d"},
      {"ref-plus", "ref(bot => bot)^+", "\\p:bot => bot. p"},
      {"ref-minus", "ref(bot => bot)^-", "\\p:bot => bot. p"},
      {"univ-plus", "univ(bot, bot => bot, d, c)^+", "d"},
      {"univ-minus", "univ(bot, bot => bot, d, c)^-", "c"},
      {"beta-tri",
       "(lll e : x =[Omega] y . e =>* ref(x)) @[bot, bot => bot] k",
       "k =>* ref(bot)"},
      {"ref-lam-app", "ref(\\x:Omega. x => bot) @[bot, bot => bot] k",
       "k =>* ref(bot)"},
      {"impstar-ref-ref", "ref(bot) =>* ref(bot => bot)",
       "ref(bot => (bot => bot))"},
      {"impstar-ref-univ", "ref(bot) =>* univ(bot => bot, bot, d, c)",
       "univ(bot => (bot => bot), bot => bot,"
       " \\p:bot => (bot => bot). \\q:bot. d (p q),"
       " \\p:bot => bot. \\q:bot. c (p q))"},
      {"impstar-univ-ref", "univ(bot, bot => bot, d, c) =>* ref(bot)",
       "univ(bot => bot, (bot => bot) => bot,"
       " \\p:bot => bot. \\q:bot => bot. p (c q),"
       " \\p:(bot => bot) => bot. \\q:bot. p (d q))"},
      {"impstar-univ-univ",
       "univ(bot, bot => bot, d, c) =>* univ(bot, bot, d2, c2)",
       "univ(bot => bot, (bot => bot) => bot,"
       " \\p:bot => bot. \\q:bot => bot. d2 (p (c q)),"
       " \\p:(bot => bot) => bot. \\q:bot. c2 (p (d q)))"},
  };
  for (const Fixture& fixture : fixtures) {
    auto step = step_cbn(parse_expression(fixture.redex, ctx));
    if (!step) {
      reporter.require(false, std::string(fixture.rule) + ": no step");
      continue;
    }
    reporter.require(step->rule == fixture.rule,
                     std::string(fixture.rule) + ": fired " + step->rule);
    reporter.require(alpha_equal(step->expr, parse_expression(fixture.contractum, ctx)),
                     std::string(fixture.rule) + ": contractum " + print(step->expr));
  }
  reporter.finish();
}

void criterion_5_diamond() {
  Reporter reporter(5, "diamond property, 10^4 cases");
  require_property(reporter, "diamond", 10000, 510000);
  reporter.finish();
  if (results.back().seconds >= 120)
    std::cout << "  note: exceeded the stated 2 minute budget\n";
}

void criterion_6_confluence() {
  Reporter reporter(6, "confluence of one-step branches, 10^4 cases");
  require_property(reporter, "confluence-step", 10000, 610000);
  reporter.finish();
}

void criterion_7_subject_reduction() {
  Reporter reporter(7, "subject reduction and type validity, 10^4 cases");
  require_property(reporter, "subject-reduction", 10000, 710000);

  // type validity: inferred propositions type at Omega
  GenConfig cfg;
  cfg.seed = 720000;
  int checked = 0;
  for (int i = 0; i < 20000 && checked < 10000; ++i) {
    cfg.seed = 720000 + static_cast<std::uint64_t>(i);
    Rng rng(cfg.seed);
    Context ctx = gen_context(rng, cfg, true);
    auto sample = gen_typed(ExprClass::Proof, ctx, cfg);
    if (!sample) continue;
    ++checked;
    try {
      Term prop = infer_prop(ctx, std::get<Proof>(sample->expr),
                             CheckOptions{kPropertyFuel});
      if (!(infer_type(ctx, prop, CheckOptions{kPropertyFuel}) == Type::omega())) {
        reporter.require(false, "inferred proposition not at Omega: " + print(prop));
        break;
      }
    } catch (const TypeError& error) {
      reporter.require(false, error.render());
      break;
    }
  }
  reporter.require(checked >= 10000, "only generated " + std::to_string(checked) +
                                         " proofs for type validity");
  reporter.finish();
}

void criterion_8_substitution_lemmas() {
  Reporter reporter(8, "substitution lemmas and path-substitution respect");
  require_property(reporter, "subst-pathsubst-i", 10000, 810000);
  require_property(reporter, "subst-pathsubst-ii", 10000, 820000);
  require_property(reporter, "resp-pathsub", 10000, 830000);
  reporter.finish();
}

void criterion_9_canonicity() {
  Reporter reporter(9, "canonicity of closed proofs and paths, 10^3 cases");
  GenConfig cfg;
  cfg.size = 8;
  int collected = 0;
  for (int i = 0; i < 20000 && collected < 1000; ++i) {
    cfg.seed = 910000 + static_cast<std::uint64_t>(i);
    ExprClass sort = i % 2 == 0 ? ExprClass::Proof : ExprClass::Path;
    auto sample = gen_typed(sort, Context{}, cfg);
    if (!sample) continue;
    ++collected;
    ReductionOutcome outcome = reduce(sample->expr, 10000);
    if (outcome.status == NormalStatus::FuelExhausted) {
      reporter.require(false, "fuel exhausted on " + print(sample->expr));
      break;
    }
    if (outcome.status != NormalStatus::NormalCanonical) {
      reporter.require(false, "normal form " + print(outcome.result) +
                                  " is not canonical");
      break;
    }
    if (const auto* proof = std::get_if<Proof>(&outcome.result)) {
      if (!as_lam(*proof)) {
        reporter.require(false, "canonical proof is not a lambda: " + print(*proof));
        break;
      }
    }
  }
  reporter.require(collected >= 1000,
                   "only generated " + std::to_string(collected) + " closed samples");
  reporter.finish();
}

void criterion_10_consistency() {
  Reporter reporter(10, "no closed proof of bot up to size 8");
  ConsistencyReport report = bounded_consistency_search(8);
  reporter.require(report.hits.empty(), report.render());
  std::cout << "  " << report.render() << "\n";
  reporter.finish();
  if (results.back().seconds >= 300)
    std::cout << "  note: exceeded the stated 5 minute budget\n";
}

void criterion_11_round_trip() {
  Reporter reporter(11, "parser round trip, 10^4 cases");
  Context pool = raw_variable_pool_context();
  for (int i = 0; i < 10000; ++i) {
    Rng rng(1110000 + static_cast<std::uint64_t>(i));
    Expr e = gen_raw_expr(rng, 1 + rng.below(12));
    Expr reparsed = parse_expression(print(e), pool);
    if (!alpha_equal(e, reparsed)) {
      reporter.require(false, "round trip changed " + print(e));
      break;
    }
  }
  reporter.finish();
}

}  // namespace

int main(int argc, char** argv) {
  fs::path scripts_dir = argc > 1 ? argv[1] : "scripts";
  try {
    criterion_1_golden_computation(scripts_dir);
    criterion_2_respect_equivalence(scripts_dir);
    criterion_3_negative_fixture();
    criterion_4_redex_matrix();
    criterion_5_diamond();
    criterion_6_confluence();
    criterion_7_subject_reduction();
    criterion_8_substitution_lemmas();
    criterion_9_canonicity();
    criterion_10_consistency();
    criterion_11_round_trip();
  } catch (const std::exception& error) {
    std::cerr << "acceptance suite aborted: " << error.what() << "\n";
    return 2;
  }
  int failed = 0;
  for (const Criterion& criterion : results)
    if (!criterion.pass) ++failed;
  std::cout << "ACCEPTANCE " << results.size() - failed << "/" << results.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
