#include "phoml/script.hpp"

#include "phoml/printer.hpp"

namespace phoml {

namespace {

ContextEntry entry_for(const std::string& name, const Classifier& classifier) {
  if (const auto* type = std::get_if<Type>(&classifier)) return TermDecl{name, *type};
  if (const auto* prop = std::get_if<Term>(&classifier)) return ProofDecl{name, *prop};
  return PathDecl{name, std::get<Equation>(classifier)};
}

std::string location(const SourceSpan& span) {
  return span.file + ":" + std::to_string(span.line) + ":" +
         std::to_string(span.column);
}

void check_subject(const Context& ctx, const Expr& subject, const CheckOptions& options) {
  if (const auto* t = std::get_if<Term>(&subject)) {
    infer_type(ctx, *t, options);
  } else if (const auto* p = std::get_if<Proof>(&subject)) {
    infer_prop(ctx, *p, options);
  } else {
    infer_equation(ctx, std::get<Path>(subject), options);
  }
}

}  // namespace

std::string render_classifier(const Classifier& classifier) {
  if (const auto* type = std::get_if<Type>(&classifier)) return print(*type);
  if (const auto* prop = std::get_if<Term>(&classifier)) return print(*prop);
  return print(std::get<Equation>(classifier));
}

std::string render_outcome(const ReductionOutcome& outcome, bool with_trace) {
  std::string out;
  if (with_trace) {
    for (const TraceEntry& entry : outcome.trace) {
      out += entry.rule + " @ " + (entry.position.empty() ? "top" : entry.position) +
             ": " + print(entry.after) + "\n";
    }
  }
  out += to_string(outcome.status) + " steps=" + std::to_string(outcome.steps) + "\n";
  out += print(outcome.result);
  return out;
}

ScriptRun run_script(const Script& script, const RunScriptOptions& options) {
  ScriptRun run;
  CheckOptions check_options{options.fuel};
  int directive_index = 0;

  for (const Declaration& decl : script.decls) {
    if (const auto* assume = std::get_if<AssumeDecl>(&decl)) {
      try {
        run.context = run.context.extended(entry_for(assume->name, assume->classifier));
        check_context(run.context, check_options);
      } catch (const std::exception& error) {
        run.ok = false;
        run.fatal = location(assume->span) + ": assumption '" + assume->name +
                    "' is invalid: " + error.what();
        return run;
      }
      continue;
    }
    if (const auto* def = std::get_if<DefDecl>(&decl)) {
      try {
        check_subject(run.context, def->body, check_options);
      } catch (const std::exception& error) {
        run.ok = false;
        run.fatal = location(def->span) + ": definition '" + def->name +
                    "' does not typecheck: " + error.what();
        return run;
      }
      continue;
    }
    if (const auto* check = std::get_if<CheckDirective>(&decl)) {
      DirectiveOutput output{++directive_index, "check", "", true, check->span};
      try {
        if (const auto* type = std::get_if<Type>(&check->classifier)) {
          Type inferred =
              infer_type(run.context, std::get<Term>(check->subject), check_options);
          if (inferred != *type)
            throw TypeError(TypeErrorKind::KindMismatch, "",
                            "term has type " + print(inferred) + ", expected " +
                                print(*type));
        } else if (const auto* prop = std::get_if<Term>(&check->classifier)) {
          check_proof(run.context, std::get<Proof>(check->subject), *prop,
                      check_options);
        } else {
          check_path(run.context, std::get<Path>(check->subject),
                     std::get<Equation>(check->classifier), check_options);
        }
        output.text = "ok : " + render_classifier(check->classifier);
      } catch (const std::bad_variant_access&) {
        output.ok = false;
        output.text = "ERROR KindMismatch at top: expression sort does not match "
                      "the stated classifier";
      } catch (const TypeError& error) {
        output.ok = false;
        output.text = error.render();
      }
      run.ok = run.ok && output.ok;
      run.outputs.push_back(std::move(output));
      continue;
    }
    const auto& normalize = std::get<NormalizeDirective>(decl);
    DirectiveOutput output{++directive_index, "normalize", "", true, normalize.span};
    try {
      check_subject(run.context, normalize.subject, check_options);
      ReductionOutcome outcome = reduce(normalize.subject, options.fuel, options.trace);
      output.text = render_outcome(outcome, options.trace);
    } catch (const TypeError& error) {
      output.ok = false;
      output.text = error.render();
    }
    run.ok = run.ok && output.ok;
    run.outputs.push_back(std::move(output));
  }
  return run;
}

std::optional<ReductionOutcome> normalize_definition(const Script& script,
                                                     const std::string& name,
                                                     const RunScriptOptions& options) {
  Context ctx;
  for (const Declaration& decl : script.decls) {
    if (const auto* assume = std::get_if<AssumeDecl>(&decl)) {
      ctx = ctx.extended(entry_for(assume->name, assume->classifier));
      continue;
    }
    if (const auto* def = std::get_if<DefDecl>(&decl)) {
      if (def->name == name) return reduce(def->body, options.fuel, options.trace);
    }
  }
  return std::nullopt;
}

}  // namespace phoml
