#pragma once

// Execution of proof scripts: assumptions build a context, definitions are
// typechecked and inlined, check directives run the typechecker and normalize
// directives run the reduction engine.

#include <optional>
#include <string>
#include <vector>

#include "phoml/parser.hpp"
#include "phoml/reduction.hpp"
#include "phoml/typecheck.hpp"

namespace phoml {

struct RunScriptOptions {
  int fuel = kDefaultFuel;
  bool trace = false;  // include rule-by-rule traces in normalize output
};

struct DirectiveOutput {
  int index = 0;  // 1-based ordinal among the script's directives
  std::string kind;  // "check" or "normalize"
  std::string text;  // result lines, no trailing newline
  bool ok = true;
  SourceSpan span;
};

struct ScriptRun {
  bool ok = true;
  std::string fatal;  // nonempty when a declaration failed and the run stopped
  std::vector<DirectiveOutput> outputs;
  Context context;  // assumptions in scope at the end of the run
};

ScriptRun run_script(const Script& script, const RunScriptOptions& options = {});

// Reduce the body of the named definition in the context of the assumptions
// preceding it.  nullopt when the script has no such definition.
std::optional<ReductionOutcome> normalize_definition(const Script& script,
                                                     const std::string& name,
                                                     const RunScriptOptions& options = {});

std::string render_outcome(const ReductionOutcome& outcome, bool with_trace);
std::string render_classifier(const Classifier& classifier);

}  // namespace phoml
