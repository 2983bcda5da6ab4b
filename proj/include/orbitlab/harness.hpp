#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "orbitlab/semiclassics.hpp"

namespace orbitlab {

/// Flat key = value configuration with one INI section per concern:
///
///   [manifold]      points, length, metric (flat | cosine), amplitude
///   [groupoid]      velocity_half_width, velocity_points
///   [semiclassics]  k_min, k_max, symbol (gaussian | random), algebra (random | vector | function | zero)
///   [run]           seed, output
struct ExperimentConfig {
  std::size_t points = 256;
  double length = 2.0 * std::numbers::pi;
  std::string metric = "cosine";
  double amplitude = 0.3;
  double velocity_half_width = 4.0;
  std::size_t velocity_points = 128;
  int k_min = 3;
  int k_max = 10;
  std::string symbol = "gaussian";
  std::string algebra = "random";
  std::uint64_t seed = 1;
  std::string output;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  ManifoldPtr manifold() const;
  FiberGrid velocity_grid() const;
  std::vector<double> h_grid() const { return dyadic_grid(k_min, k_max); }
};

/// Parses and validates; errors carry the line (syntax) or field (values).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

enum class Relation { at_most, at_least, within };

struct CheckResult {
  std::string id;
  std::string anchor;
  Relation relation = Relation::at_most;
  double value = 0.0;
  /// Bound for at_most / at_least; centre for within.
  double bound = 0.0;
  double radius = 0.0;
  bool passed = false;
};

struct NamedReport {
  std::string name;
  ConvergenceReport report;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<NamedReport> reports;

  bool passed() const;
  const CheckResult& check(const std::string& id) const;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<std::string> anchors;
};

const std::vector<CatalogEntry>& suite_catalog();
const std::vector<CatalogEntry>& experiment_catalog();

/// One module's invariant list. Throws UnknownSuiteError for unknown names
/// (including "all", which is handled by run_suites).
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

/// Suites in catalog order, "all" expanded; executed on a worker pool whose
/// size comes from ORBITLAB_THREADS (default: hardware concurrency).
std::vector<SuiteResult> run_suites(const std::string& name, const ExperimentConfig& cfg);
std::size_t worker_count();

struct SweepResult {
  ConvergenceReport report;
  std::string csv;
  /// gnuplot-ready "h abs_error" lines.
  std::string plot;
};

SweepResult sweep(const std::string& experiment, const ExperimentConfig& cfg);

/// Deterministic text rendering.
std::string format_results(const std::vector<SuiteResult>& results);
std::string format_csv(const ConvergenceReport& report);

struct CoverageRow {
  std::string anchor;
  std::string suite;
  std::vector<std::string> checks;
};

/// Anchor -> owning suite and checks, in catalog order. Anchors without an
/// owner, or with checks in more than one suite, make the ledger invalid.
std::vector<CoverageRow> coverage(const std::vector<SuiteResult>& results);
bool coverage_complete(const std::vector<CoverageRow>& rows);
std::string format_coverage(const std::vector<CoverageRow>& rows);

}  // namespace orbitlab
