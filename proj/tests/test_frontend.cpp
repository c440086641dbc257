#include <doctest.h>

#include "helpers.hpp"
#include "phoml/generators.hpp"
#include "phoml/script.hpp"

using namespace phoml;
using namespace phoml::testing;

TEST_CASE("parsing the path connectives") {
  Path p = parse_path("ref(bot) =>* ref(bot)");
  const auto* star = as_imp_star(p);
  REQUIRE(star != nullptr);
  CHECK(as_ref(star->lhs) != nullptr);
  CHECK(as_ref(star->rhs) != nullptr);
}

TEST_CASE("parsing a triple lambda enforces distinct endpoints") {
  Path p = parse_path("lll e : x =[Omega] y . e");
  CHECK(as_tri_lam(p) != nullptr);
  CHECK_THROWS_AS(parse_path("lll e : x =[Omega] x . e"), ParseError);
}

TEST_CASE("parsing a subscripted path application") {
  Context ctx = Context{}
                    .extended(TermDecl{"f", parse_type("Omega -> Omega")})
                    .extended(TermDecl{"x", Type::omega()})
                    .extended(TermDecl{"y", Type::omega()})
                    .extended(PathDecl{"e", Equation{Term::var("x"), Type::omega(),
                                                     Term::var("y")}});
  Path p = parse_path("ref(f) @[x, y] e", ctx);
  const auto* app = as_path_app(p);
  REQUIRE(app != nullptr);
  CHECK(as_ref(app->fun) != nullptr);
  CHECK(alpha_equal(app->left, Term::var("x")));
  CHECK(alpha_equal(app->right, Term::var("y")));
}

TEST_CASE("reserved words are rejected as identifiers") {
  CHECK_THROWS_AS(parse_term("\\ref:Omega. bot"), ParseError);
  CHECK_THROWS_AS(parse_script("assume check : Omega"), ParseError);
  CHECK_THROWS_AS(parse_script("def normalize : term := bot"), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_script("assume x : Omega\nassume ? : Omega");
    FAIL("expected a parse error");
  } catch (const ParseError& error) {
    CHECK(error.span().line == 2);
    CHECK(std::string(error.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("unbound identifiers are parse errors") {
  CHECK_THROWS_AS(parse_term("missing"), ParseError);
}

TEST_CASE("application is left associative, implication right associative") {
  Context ctx = Context{}
                    .extended(TermDecl{"x", parse_type("Omega -> Omega -> Omega")})
                    .extended(TermDecl{"y", Type::omega()})
                    .extended(TermDecl{"z", Type::omega()});
  Term apps = parse_term("x y z", ctx);
  const auto* outer = as_app(apps);
  REQUIRE(outer != nullptr);
  CHECK(as_app(outer->fun) != nullptr);

  Term imps = parse_term("bot => bot => bot");
  const auto* imp = as_imp(imps);
  REQUIRE(imp != nullptr);
  CHECK(as_imp(imp->rhs) != nullptr);
  CHECK(as_bottom(imp->lhs) != nullptr);
}

TEST_CASE("printing matches the grammar conventions") {
  CHECK(print(parse_term("bot => bot => bot")) == "bot => bot => bot");
  Context ctx = Context{}
                    .extended(TermDecl{"x", parse_type("Omega -> Omega -> Omega")})
                    .extended(TermDecl{"y", Type::omega()})
                    .extended(TermDecl{"z", Type::omega()});
  CHECK(print(parse_term("x y z", ctx)) == "x y z");
  CHECK(print(parse_term("(bot => bot) => bot")) == "(bot => bot) => bot");
  CHECK(print(parse_type("(Omega -> Omega) -> Omega")) == "(Omega -> Omega) -> Omega");
}

TEST_CASE("the normal form of the computation example prints explicitly") {
  Expr nf = parse_expression(
      "\\m:bot => bot. \\n:bot => bot. (ref(bot) =>* ref(bot))^- m");
  CHECK(print(nf) == "\\m:bot => bot. \\n:bot => bot. (ref(bot) =>* ref(bot))^- m");
}

TEST_CASE("printing freshens shadowed binder hints") {
  // binder hint collides with a free variable; print must rename it
  Context ctx = Context{}.extended(TermDecl{"x", Type::omega()});
  Term t = Term::lam("x", Type::omega(), Term::var("x'"));
  Term reparsed = parse_term(print(t), Context{}.extended(TermDecl{"x'", Type::omega()}));
  CHECK(alpha_equal(t, reparsed));
}

TEST_CASE("round trip: parse after print is identity up to alpha") {
  Context pool = raw_variable_pool_context();
  for (int i = 0; i < 10000; ++i) {
    Rng rng(15000 + static_cast<std::uint64_t>(i));
    Expr e = gen_raw_expr(rng, 1 + rng.below(12));
    Expr reparsed = parse_expression(print(e), pool);
    REQUIRE(class_of(reparsed) == class_of(e));
    REQUIRE(alpha_equal(e, reparsed));
  }
}

TEST_CASE("equations round trip") {
  Context pool = raw_variable_pool_context();
  for (int i = 0; i < 2000; ++i) {
    Rng rng(16000 + static_cast<std::uint64_t>(i));
    Equation eq{gen_raw_term(rng, 1 + rng.below(8)), gen_raw_type(rng, 3),
                gen_raw_term(rng, 1 + rng.below(8))};
    Equation reparsed = parse_equation(print(eq), pool);
    REQUIRE(alpha_equal(eq, reparsed));
  }
}

// ---------------------------------------------------------------------------
// Scripts
// ---------------------------------------------------------------------------

namespace {

const char* kScriptText = R"(-- a small script exercising every declaration form
assume x : Omega
assume p : x => x
assume e : x =[Omega] x
assume r : x

def twice : term := x => x
def reflx : path := ref(x)

check p : twice
check reflx : x =[Omega] x
normalize (\q:x. q) r
)";

}  // namespace

TEST_CASE("scripts parse into declarations and run") {
  Script script = parse_script(kScriptText, "demo.phoml");
  REQUIRE(script.decls.size() == 9);
  ScriptRun run = run_script(script);
  CHECK(run.fatal.empty());
  CHECK(run.ok);
  REQUIRE(run.outputs.size() == 3);
  CHECK(run.outputs[0].text == "ok : x => x");
  CHECK(run.outputs[1].text == "ok : x =[Omega] x");
  CHECK(run.outputs[2].text == "normal-neutral steps=1\nr");
}

TEST_CASE("definitions are inlined transparently") {
  Script script = parse_script(
      "assume x : Omega\n"
      "def id : term := \\y:Omega. y\n"
      "def applied : term := id x\n"
      "normalize applied\n");
  auto outcome = normalize_definition(script, "applied");
  REQUIRE(outcome.has_value());
  CHECK(alpha_equal(outcome->result,
                    parse_expression("x", Context{}.extended(TermDecl{"x", Type::omega()}))));
}

TEST_CASE("definition bodies capture earlier free variables under later binders") {
  // The triple lambda binds the variables the inlined definition mentions.
  Script script = parse_script(
      "assume x : Omega\n"
      "assume y : Omega\n"
      "assume e : x =[Omega] y\n"
      "def back : proof := e^-\n"
      "def wrapped : path := lll e : x =[Omega] y . univ(x, y, e^+, back)\n"
      "check wrapped : (\\a:Omega. a) =[Omega -> Omega] (\\b:Omega. b)\n");
  ScriptRun run = run_script(script);
  CHECK(run.fatal.empty());
  REQUIRE(run.outputs.size() == 1);
  CHECK(run.outputs[0].ok);
}

TEST_CASE("failing checks report errors without aborting the run") {
  Script script = parse_script(
      "check bot : Omega\n"
      "check bot : Omega -> Omega\n"
      "check bot : Omega\n");
  ScriptRun run = run_script(script);
  CHECK_FALSE(run.ok);
  REQUIRE(run.outputs.size() == 3);
  CHECK(run.outputs[0].ok);
  CHECK_FALSE(run.outputs[1].ok);
  CHECK(run.outputs[1].text.rfind("ERROR KindMismatch", 0) == 0);
  CHECK(run.outputs[2].ok);
}

TEST_CASE("invalid assumptions abort the run") {
  Script script = parse_script("assume p : \\x:Omega. x\ncheck bot : Omega\n");
  ScriptRun run = run_script(script);
  CHECK_FALSE(run.ok);
  CHECK_FALSE(run.fatal.empty());
  CHECK(run.outputs.empty());
}

TEST_CASE("duplicate declarations and sort mismatches are parse errors") {
  CHECK_THROWS_AS(parse_script("assume x : Omega\nassume x : Omega"), ParseError);
  CHECK_THROWS_AS(parse_script("def d : proof := bot"), ParseError);
  CHECK_THROWS_AS(parse_script("def d : nonsense := bot"), ParseError);
}

TEST_CASE("mismatched classifier sorts are reported, not crashes") {
  Script script = parse_script("check bot : bot =[Omega] bot\n");
  ScriptRun run = run_script(script);
  CHECK_FALSE(run.ok);
  REQUIRE(run.outputs.size() == 1);
  CHECK(run.outputs[0].text.rfind("ERROR KindMismatch", 0) == 0);
}

TEST_CASE("normalize directives respect the fuel option") {
  Script script = parse_script(
      "def loop : term := (\\x:Omega. x) ((\\x:Omega. x) bot)\nnormalize loop\n");
  ScriptRun run = run_script(script, RunScriptOptions{1, false});
  REQUIRE(run.outputs.size() == 1);
  CHECK(run.outputs[0].text.rfind("fuel-exhausted steps=1", 0) == 0);
}

TEST_CASE("trace output lists the contracted rules") {
  Script script = parse_script("normalize ref(bot => bot)^+ (\\p:bot. p)\n");
  ScriptRun run = run_script(script, RunScriptOptions{100, true});
  REQUIRE(run.outputs.size() == 1);
  CHECK(run.outputs[0].text.find("ref-plus @ fun") != std::string::npos);
  CHECK(run.outputs[0].text.find("beta-proof @ top") != std::string::npos);
}
