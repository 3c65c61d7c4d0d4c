#include "homgain/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "homgain/errors.hpp"

namespace homgain {

CircleGrid RunConfig::circle(int threads) const {
  CircleGrid g;
  g.angles = circle_grid;
  g.seed = seed;
  g.mu_floor = mu_floor;
  g.threads = threads;
  return g;
}

SphereGrid RunConfig::sphere(int threads) const {
  SphereGrid g;
  g.polar = sphere_polar;
  g.azimuth = sphere_azimuth;
  g.starts = refine_starts;
  g.seed = seed;
  g.threads = threads;
  return g;
}

GainOptions RunConfig::gain_options(int threads) const {
  GainOptions o;
  o.tol = gain_tol;
  o.grid = sphere(threads);
  return o;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  // strtod accepts the usual decimal and exponent forms; require full consumption.
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return x;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
  };
  auto count = [](std::size_t& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) {
      field = static_cast<std::size_t>(to_uint(k, v));
    };
  };
  const std::map<std::string, Setter> setters = {
      {"alpha1", real(c.alpha1)},
      {"alpha2", real(c.alpha2)},
      {"beta", real(c.beta)},
      {"d", real(c.d)},
      {"L", real(c.L)},
      {"margin", real(c.margin)},
      {"a_tilde", [&c](const std::string& k, const std::string& v) { c.a_tilde = to_double(k, v); }},
      {"circle_grid", count(c.circle_grid)},
      {"mu_floor", real(c.mu_floor)},
      {"sphere_polar", count(c.sphere_polar)},
      {"sphere_azimuth", count(c.sphere_azimuth)},
      {"refine_starts", count(c.refine_starts)},
      {"gain_tol", real(c.gain_tol)},
      {"L_tol", real(c.L_tol)},
      {"L_coarse", count(c.L_coarse)},
      {"seed", [&c](const std::string& k, const std::string& v) { c.seed = to_uint(k, v); }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    it->second(key, value);
  }
  return c;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  return parse_config(in);
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream os;
  os << "# homgain run configuration\n";
  os << "alpha1 = " << fmt(c.alpha1) << "\n";
  os << "alpha2 = " << fmt(c.alpha2) << "\n";
  os << "beta = " << fmt(c.beta) << "\n";
  os << "d = " << fmt(c.d) << "\n";
  os << "L = " << fmt(c.L) << "\n";
  os << "margin = " << fmt(c.margin) << "\n";
  if (c.a_tilde) os << "a_tilde = " << fmt(*c.a_tilde) << "\n";
  os << "circle_grid = " << c.circle_grid << "\n";
  os << "mu_floor = " << fmt(c.mu_floor) << "\n";
  os << "sphere_polar = " << c.sphere_polar << "\n";
  os << "sphere_azimuth = " << c.sphere_azimuth << "\n";
  os << "refine_starts = " << c.refine_starts << "\n";
  os << "gain_tol = " << fmt(c.gain_tol) << "\n";
  os << "L_tol = " << fmt(c.L_tol) << "\n";
  os << "L_coarse = " << c.L_coarse << "\n";
  os << "seed = " << c.seed << "\n";
  return os.str();
}

DifferentiatorConfig make_differentiator(const RunConfig& c, int threads) {
  const auto grid = c.circle(threads);
  if (c.a_tilde) return DifferentiatorConfig::create(c.alpha1, c.alpha2, c.beta, c.d, c.L, *c.a_tilde, grid);
  return DifferentiatorConfig::with_margin(c.alpha1, c.alpha2, c.beta, c.d, c.L, c.margin, grid);
}

}  // namespace homgain
