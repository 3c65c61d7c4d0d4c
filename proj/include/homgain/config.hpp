#pragma once

// Flat key-value run configuration:
//
//   # comment
//   alpha1 = 3
//   alpha2 = 2.598076211353316
//   d = -0.5
//
// Unknown keys and malformed numbers are rejected.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "homgain/gain.hpp"
#include "homgain/search.hpp"

namespace homgain {

struct RunConfig {
  double alpha1 = 3.0;
  double alpha2 = 2.598076211353316;  // 1.5 sqrt(3)
  double beta = 1.0;
  double d = -0.5;
  double L = 1.0;
  double margin = 1.0;
  std::optional<double> a_tilde;  // overrides M + margin when set

  std::size_t circle_grid = 4096;
  double mu_floor = 1e-14;
  std::size_t sphere_polar = 512;
  std::size_t sphere_azimuth = 1024;
  std::size_t refine_starts = 16;
  double gain_tol = 1e-3;
  double L_tol = 1e-2;
  std::size_t L_coarse = 17;
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;

  CircleGrid circle(int threads = 1) const;
  SphereGrid sphere(int threads = 1) const;
  GainOptions gain_options(int threads = 1) const;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
// Throws IoError when the file cannot be read.
RunConfig load_config(const std::string& path);
// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

// Validated differentiator for the configured parameters and scaling L.
DifferentiatorConfig make_differentiator(const RunConfig& cfg, int threads = 1);

}  // namespace homgain
