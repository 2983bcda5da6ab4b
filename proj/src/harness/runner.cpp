#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "common.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab {

using namespace harness;

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& SuiteResult::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw InvalidParameter("suite " + name + " has no check " + id);
}

const std::vector<CatalogEntry>& suite_catalog() {
  namespace a = harness::anchor;
  static const std::vector<CatalogEntry> catalog{
      {"group", "group law, exponential, bracket and adjoint; grid geometry",
       {a::exp_log, a::quadrature, a::differentiation, a::product_law, a::exponential, a::bracket, a::adjoint}},
      {"coadjoint", "cotangent action against the coadjoint action and the moment map",
       {a::natural_action, a::equivariance, a::comoment, a::symplectic_pairing, a::transitivity, a::injectivity}},
      {"quantization", "the unitary representation on half-densities and its derivative",
       {a::unitarity, a::homomorphism, a::derived, a::commutator, a::radon_nikodym}},
      {"groupoid", "pair groupoid, Haar system, fiberwise Fourier transform, extensions",
       {a::pair_groupoid, a::haar_invariance, a::haar_continuity, a::fourier, a::extension}},
      {"semiclassics", "trace and character formulas, centralizers, covariance",
       {a::trace, a::character, a::centralizer, a::covariance, a::smooth_family}},
      {"induction", "induced representation from a point stabilizer",
       {a::induced_space, a::stabilizer, a::induced_rep}},
  };
  return catalog;
}

const std::vector<CatalogEntry>& experiment_catalog() {
  namespace a = harness::anchor;
  static const std::vector<CatalogEntry> catalog{
      {"trace", "h tr T_h for the canonical family against the symbol integral", {a::trace}},
      {"character", "h tr(rho(exp hZ) T_h) against the phase-space integral", {a::character}},
      {"covariance", "dequantized conjugated kernels against the transported symbol", {a::covariance}},
      {"haar", "Haar integrals at h > 0 against the fiber integral", {a::haar_continuity}},
  };
  return catalog;
}

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
  cfg.validate();
  static const std::map<std::string, SuiteResult (*)(const ExperimentConfig&)> table{
      {"group", group_suite},         {"coadjoint", coadjoint_suite},       {"quantization", quantization_suite},
      {"groupoid", groupoid_suite},   {"semiclassics", semiclassics_suite}, {"induction", induction_suite},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownSuiteError("unknown suite '" + name + "'");
  return it->second(cfg);
}

std::size_t worker_count() {
  if (const char* env = std::getenv("ORBITLAB_THREADS")) {
    const std::string s(env);
    std::size_t n = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), n);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || n == 0)
      throw ConfigError("must be a positive integer, got '" + s + "'", 0, "ORBITLAB_THREADS");
    return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SuiteResult> run_suites(const std::string& name, const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::string> names;
  if (name == "all") {
    for (const auto& e : suite_catalog()) names.push_back(e.name);
  } else {
    names.push_back(name);
  }
  std::vector<SuiteResult> results(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < names.size();) {
      try {
        results[k] = run_suite(names[k], cfg);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(worker_count(), names.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

SweepResult sweep(const std::string& experiment, const ExperimentConfig& cfg) {
  cfg.validate();
  const auto m = cfg.manifold();
  const auto grid = cfg.velocity_grid();
  Rng rng(cfg.seed);
  ConvergenceReport report;
  if (experiment == "trace") {
    report = trace_functional(groupoid_quantize(preset_symbol(cfg.symbol, m, grid, rng), cfg.h_grid()));
  } else if (experiment == "character") {
    const auto b = preset_symbol(cfg.symbol, m, grid, rng);
    report = character_pairing(groupoid_quantize(b, cfg.h_grid()), preset_algebra(cfg.algebra, m, rng));
  } else if (experiment == "covariance") {
    const auto b = preset_symbol(cfg.symbol, m, grid, rng);
    report = covariance_report(exp_gm(preset_algebra(cfg.algebra, m, rng)), b, cfg.h_grid());
  } else if (experiment == "haar") {
    report = haar_report(cfg);
  } else {
    throw UnknownSuiteError("unknown experiment '" + experiment + "'");
  }
  SweepResult out{report, format_csv(report), {}};
  std::ostringstream plot;
  plot << "# h abs_error\n";
  for (std::size_t k = 0; k < report.h_values.size(); ++k)
    plot << format_number(report.h_values[k]) << ' ' << format_number(report.errors[k]) << '\n';
  out.plot = plot.str();
  return out;
}

std::string format_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "h,value_real,value_imag,target_real,target_imag,abs_error\r\n";
  for (std::size_t k = 0; k < r.h_values.size(); ++k)
    out << format_number(r.h_values[k]) << ',' << format_number(r.values[k].real()) << ','
        << format_number(r.values[k].imag()) << ',' << format_number(r.target.real()) << ','
        << format_number(r.target.imag()) << ',' << format_number(r.errors[k]) << "\r\n";
  out << "fit,slope=" << format_number(r.fitted_slope) << ",limit_real=" << format_number(r.extrapolated_limit.real())
      << ",limit_imag=" << format_number(r.extrapolated_limit.imag()) << ",window=lower_half,method=ols_loglog\r\n";
  return out.str();
}

std::string format_results(const std::vector<SuiteResult>& results) {
  std::ostringstream out;
  for (const auto& s : results) {
    std::size_t passed = 0;
    for (const auto& c : s.checks) {
      passed += c.passed ? 1 : 0;
      out << (c.passed ? "PASS " : "FAIL ") << c.id << " value=" << format_number(c.value);
      switch (c.relation) {
        case Relation::at_most: out << " <= " << format_number(c.bound); break;
        case Relation::at_least: out << " >= " << format_number(c.bound); break;
        case Relation::within: out << " in " << format_number(c.bound) << " +- " << format_number(c.radius); break;
      }
      out << '\n';
    }
    for (const auto& [name, rep] : s.reports)
      out << "  report " << s.name << '.' << name << " slope=" << format_number(rep.fitted_slope)
          << " last_error=" << format_number(rep.errors.empty() ? 0.0 : rep.errors.back()) << '\n';
    out << "suite " << s.name << ": " << passed << '/' << s.checks.size() << (s.passed() ? " passed" : " FAILED")
        << '\n';
  }
  return out.str();
}

std::vector<CoverageRow> coverage(const std::vector<SuiteResult>& results) {
  std::vector<CoverageRow> rows;
  for (const auto& entry : suite_catalog())
    for (const auto& a : entry.anchors) {
      CoverageRow row{a, entry.name, {}};
      for (const auto& s : results)
        for (const auto& c : s.checks)
          if (c.anchor == a) row.checks.push_back(s.name == entry.name ? c.id : s.name + "/" + c.id);
      rows.push_back(std::move(row));
    }
  return rows;
}

bool coverage_complete(const std::vector<CoverageRow>& rows) {
  std::set<std::string> seen;
  for (const auto& row : rows) {
    if (row.checks.empty() || !seen.insert(row.anchor).second) return false;
    // A check listed as "suite/id" sits in a suite other than the owner.
    for (const auto& c : row.checks)
      if (c.find('/') != std::string::npos) return false;
  }
  return true;
}

std::string format_coverage(const std::vector<CoverageRow>& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    out << row.anchor << " -> " << row.suite << ':';
    if (row.checks.empty()) out << " (not run)";
    for (std::size_t k = 0; k < row.checks.size(); ++k) out << (k ? ", " : " ") << row.checks[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace orbitlab
