#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "orbitlab/errors.hpp"
#include "orbitlab/harness.hpp"

namespace orbitlab {
namespace {

namespace pt = boost::property_tree;

// Line of each "section.key" for value diagnostics; the ptree drops them.
std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream in(text);
  std::string line, section;
  int number = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      lines.emplace(section, number);
    } else if (const auto eq = t.find('='); eq != std::string::npos) {
      lines[section + "." + trim(t.substr(0, eq))] = number;
    }
  }
  return lines;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::map<std::string, int> lines) : tree_(tree), lines_(std::move(lines)) {}

  template <class T>
  void read(const std::string& field, T& out) const {
    const auto node = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'));
    if (!node) return;
    if constexpr (std::is_same_v<T, std::string>) {
      out = *node;
    } else {
      const std::string& s = *node;
      T value{};
      const auto r = std::from_chars(s.data(), s.data() + s.size(), value);
      if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || s.empty())
        throw ConfigError("cannot parse '" + s + "'", line(field), field);
      out = value;
    }
  }

  int line(const std::string& field) const {
    const auto it = lines_.find(field);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  const pt::ptree& tree_;
  std::map<std::string, int> lines_;
};

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"manifold", {"points", "length", "metric", "amplitude"}},
      {"groupoid", {"velocity_half_width", "velocity_points"}},
      {"semiclassics", {"k_min", "k_max", "symbol", "algebra"}},
      {"run", {"seed", "output"}},
  };
  return keys;
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& msg) { throw ConfigError(msg, 0, field); };
  if (points < 8 || !spectral::is_power_of_two(points)) fail("manifold.points", "must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) fail("manifold.length", "must be positive");
  if (metric != "flat" && metric != "cosine") fail("manifold.metric", "expected flat or cosine");
  if (!(std::abs(amplitude) < 1.0)) fail("manifold.amplitude", "needs |amplitude| < 1 for a positive metric");
  if (!(velocity_half_width > 0.0)) fail("groupoid.velocity_half_width", "must be positive");
  if (velocity_points < 8 || velocity_points % 2 != 0) fail("groupoid.velocity_points", "must be even and >= 8");
  if (k_min < 0) fail("semiclassics.k_min", "must be >= 0");
  if (k_min >= k_max) fail("semiclassics.k_max", "needs k_min < k_max");
  if (k_max > 30) fail("semiclassics.k_max", "must be <= 30");
  if (symbol != "gaussian" && symbol != "random") fail("semiclassics.symbol", "expected gaussian or random");
  if (algebra != "random" && algebra != "vector" && algebra != "function" && algebra != "zero")
    fail("semiclassics.algebra", "expected random, vector, function or zero");
}

ManifoldPtr ExperimentConfig::manifold() const {
  return metric == "flat" ? GridManifold::flat(points, length) : GridManifold::cosine(points, amplitude, length);
}

FiberGrid ExperimentConfig::velocity_grid() const { return FiberGrid{velocity_half_width, velocity_points}; }

ExperimentConfig parse_config(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  pt::ptree tree;
  try {
    std::istringstream stream(text);
    pt::read_ini(stream, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.message(), static_cast<int>(e.line()));
  }
  const Reader reader(tree, key_lines(text));
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (body.empty() || it == known_keys().end())
      throw ConfigError("unknown section", reader.line(section), section);
    for (const auto& [key, value] : body) {
      const std::string field = section + "." + key;
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw ConfigError("unknown key", reader.line(field), field);
    }
  }
  ExperimentConfig cfg;
  reader.read("manifold.points", cfg.points);
  reader.read("manifold.length", cfg.length);
  reader.read("manifold.metric", cfg.metric);
  reader.read("manifold.amplitude", cfg.amplitude);
  reader.read("groupoid.velocity_half_width", cfg.velocity_half_width);
  reader.read("groupoid.velocity_points", cfg.velocity_points);
  reader.read("semiclassics.k_min", cfg.k_min);
  reader.read("semiclassics.k_max", cfg.k_max);
  reader.read("semiclassics.symbol", cfg.symbol);
  reader.read("semiclassics.algebra", cfg.algebra);
  reader.read("run.seed", cfg.seed);
  reader.read("run.output", cfg.output);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(e.message(), reader.line(e.field()), e.field());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return parse_config(in);
}

}  // namespace orbitlab
