// Command-line driver: typechecking and normalizing proof scripts, running
// the metatheory property suites, and replaying the bundled example scripts
// against their golden outputs.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phoml/printer.hpp"
#include "phoml/properties.hpp"
#include "phoml/script.hpp"

namespace fs = std::filesystem;
using namespace phoml;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_check(const std::string& file, int fuel) {
  if (!fs::exists(file)) {
    std::cerr << file << ": no such file\n";
    return kExitUsage;
  }
  Script script = parse_script(read_file(file), file);
  ScriptRun run = run_script(script, RunScriptOptions{fuel, false});
  for (const DirectiveOutput& output : run.outputs) {
    std::cout << output.kind << " " << output.index << ": ";
    if (!output.ok)
      std::cout << output.span.file << ":" << output.span.line << ":"
                << output.span.column << ": ";
    std::cout << output.text << "\n";
  }
  if (!run.fatal.empty()) {
    std::cerr << run.fatal << "\n";
    return kExitFailure;
  }
  return run.ok ? kExitOk : kExitFailure;
}

int run_normalize(const std::string& file, const std::string& name, int fuel,
                  bool trace) {
  if (!fs::exists(file)) {
    std::cerr << file << ": no such file\n";
    return kExitUsage;
  }
  Script script = parse_script(read_file(file), file);
  std::optional<ReductionOutcome> outcome =
      normalize_definition(script, name, RunScriptOptions{fuel, trace});
  if (!outcome) {
    std::cerr << file << ": no definition named '" << name << "'\n";
    return kExitUsage;
  }
  std::cout << render_outcome(*outcome, trace) << "\n";
  return kExitOk;
}

int run_props(const std::string& suite, int cases, std::uint64_t seed, int size,
              const std::string& profile) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.size = size;
  int effective_cases = cases > 0 ? cases : (profile == "full" ? 10000 : 1000);

  if (!suite.empty()) {
    const auto& names = registered_properties();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      std::cerr << "unknown property suite: " << suite << "\n";
      return kExitUsage;
    }
  }

  bool ok = true;
  for (const std::string& name : registered_properties()) {
    if (!suite.empty() && suite != name) continue;
    PropertyVerdict verdict = run_property(name, effective_cases, cfg);
    std::cout << verdict.render() << "\n";
    ok = ok && verdict.ok();
  }
  return ok ? kExitOk : kExitFailure;
}

int run_consistency(int max_size) {
  ConsistencyReport report = bounded_consistency_search(max_size);
  std::cout << report.render() << "\n";
  return report.hits.empty() ? kExitOk : kExitFailure;
}

std::string golden_name(const DirectiveOutput& output) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%02d", output.index);
  return std::string(buffer) + "-" + output.kind + ".txt";
}

int run_examples(const std::string& dir, bool bless, int fuel) {
  fs::path root(dir);
  if (!fs::is_directory(root)) {
    std::cerr << dir << " is not a directory\n";
    return kExitUsage;
  }
  std::vector<fs::path> scripts;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.path().extension() == ".phoml") scripts.push_back(entry.path());
  std::sort(scripts.begin(), scripts.end());
  if (scripts.empty()) {
    std::cerr << dir << " contains no .phoml scripts\n";
    return kExitUsage;
  }

  bool ok = true;
  for (const fs::path& path : scripts) {
    Script script = parse_script(read_file(path), path.string());
    ScriptRun run = run_script(script, RunScriptOptions{fuel, false});
    if (!run.fatal.empty()) {
      std::cout << "FAIL " << path.filename().string() << ": " << run.fatal << "\n";
      ok = false;
      continue;
    }
    fs::path golden_dir = root / "golden" / path.stem();
    for (const DirectiveOutput& output : run.outputs) {
      fs::path golden = golden_dir / golden_name(output);
      std::string label = path.filename().string() + ":" + std::to_string(output.index);
      if (bless) {
        fs::create_directories(golden_dir);
        std::ofstream out(golden, std::ios::binary);
        out << output.text << "\n";
        std::cout << "BLESS " << label << "\n";
        continue;
      }
      if (!fs::exists(golden)) {
        std::cout << "FAIL " << label << ": missing golden file " << golden.string()
                  << "\n";
        ok = false;
        continue;
      }
      std::string expected = read_file(golden);
      std::string actual = output.text + "\n";
      if (expected != actual) {
        std::cout << "FAIL " << label << ":\n  expected: " << expected
                  << "  actual:   " << actual;
        ok = false;
      } else {
        std::cout << "PASS " << label << "\n";
      }
    }
    if (!run.ok) {
      // A failing check directive keeps its ERROR text in the golden diff
      // above; still flag the script so exit codes are honest.
      ok = false;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PHOML: predicative higher-order minimal logic with extensional "
               "equality"};
  app.require_subcommand(1);

  std::string file, name, suite, profile = "ci", dir = "scripts";
  int fuel = kDefaultFuel;
  int cases = 0;
  int size = 8;
  int max_size = 8;
  std::uint64_t seed = 1;
  bool trace = false, bless = false;

  CLI::App* check = app.add_subcommand("check", "typecheck a proof script");
  check->add_option("file", file, "script file")->required();
  check->add_option("--fuel", fuel, "conversion fuel");

  CLI::App* normalize =
      app.add_subcommand("normalize", "normalize a definition from a script");
  normalize->add_option("file", file, "script file")->required();
  normalize->add_option("--name", name, "definition to normalize")->required();
  normalize->add_option("--fuel", fuel, "step budget");
  normalize->add_flag("--trace", trace, "print each rule and intermediate form");

  CLI::App* props = app.add_subcommand("props", "run the metatheory property suites");
  props->add_option("--suite", suite, "run a single property by name");
  props->add_option("--cases", cases, "cases per property (overrides profile)");
  props->add_option("--seed", seed, "base random seed");
  props->add_option("--size", size, "expression size budget");
  props->add_option("--profile", profile, "ci (1000 cases) or full (10000)")
      ->check(CLI::IsMember({"ci", "full"}));

  CLI::App* consistency = app.add_subcommand(
      "consistency", "exhaustively search closed proofs for inhabitants of bot");
  consistency->add_option("--max-size", max_size, "node-count bound (<= 14)");

  CLI::App* examples =
      app.add_subcommand("examples", "run bundled scripts against golden outputs");
  examples->add_option("--dir", dir, "directory containing .phoml scripts");
  examples->add_flag("--bless", bless, "rewrite the golden outputs");
  examples->add_option("--fuel", fuel, "step budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    return app.exit(error) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(file, fuel);
    if (normalize->parsed()) return run_normalize(file, name, fuel, trace);
    if (props->parsed()) return run_props(suite, cases, seed, size, profile);
    if (consistency->parsed()) return run_consistency(max_size);
    if (examples->parsed()) return run_examples(dir, bless, fuel);
  } catch (const ParseError& error) {
    std::cerr << error.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
