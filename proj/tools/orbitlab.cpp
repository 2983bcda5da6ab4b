#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "orbitlab/errors.hpp"
#include "orbitlab/harness.hpp"

namespace {

using namespace orbitlab;

ExperimentConfig configure(const std::string& path, const std::optional<std::uint64_t>& seed) {
  ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config(path);
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path, 0, "output");
  out << text;
}

void list() {
  std::cout << "suites:\n";
  for (const auto& e : suite_catalog()) {
    std::cout << "  " << e.name << "  " << e.description << '\n';
    for (const auto& a : e.anchors) std::cout << "      " << a << '\n';
  }
  std::cout << "  all  every suite above\n";
  std::cout << "experiments:\n";
  for (const auto& e : experiment_catalog()) {
    std::cout << "  " << e.name << "  " << e.description << '\n';
    for (const auto& a : e.anchors) std::cout << "      " << a << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitlab: numerical checks for Diff(S^1) semidirect C^infty and its quantization"};
  app.require_subcommand(1);

  std::string config, out_path, plot_path, target;
  std::optional<std::uint64_t> seed;
  bool with_coverage = false;

  auto* verify = app.add_subcommand("verify", "run a suite of invariant checks");
  verify->add_option("suite", target, "group, coadjoint, quantization, groupoid, semiclassics, induction or all")->required();
  verify->add_option("--config", config, "INI configuration file");
  verify->add_option("--seed", seed, "override the configured seed");
  verify->add_flag("--coverage", with_coverage, "print the anchor to check ledger");

  auto* sweep_cmd = app.add_subcommand("sweep", "h-sweep of one experiment as CSV");
  sweep_cmd->add_option("experiment", target, "trace, character, covariance or haar")->required();
  sweep_cmd->add_option("--config", config, "INI configuration file");
  sweep_cmd->add_option("--seed", seed, "override the configured seed");
  sweep_cmd->add_option("--out", out_path, "CSV destination (default: config output, else stdout)");
  sweep_cmd->add_option("--plot", plot_path, "gnuplot data destination");

  app.add_subcommand("list", "list suites and experiments with their anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("list")) {
      list();
      return 0;
    }
    const ExperimentConfig cfg = configure(config, seed);
    if (app.got_subcommand("verify")) {
      const auto results = run_suites(target, cfg);
      std::string text = format_results(results);
      bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& s) { return s.passed(); });
      if (with_coverage) {
        const auto rows = coverage(results);
        text += "coverage:\n" + format_coverage(rows);
        if (target == "all" && !coverage_complete(rows)) {
          text += "coverage incomplete\n";
          ok = false;
        }
      }
      std::cout << text;
      if (!cfg.output.empty()) write_file(cfg.output, text);
      return ok ? 0 : 1;
    }
    const auto result = sweep(target, cfg);
    const std::string dest = out_path.empty() ? cfg.output : out_path;
    if (dest.empty()) {
      std::cout << result.csv;
    } else {
      write_file(dest, result.csv);
    }
    if (!plot_path.empty()) write_file(plot_path, result.plot);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const UnknownSuiteError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
