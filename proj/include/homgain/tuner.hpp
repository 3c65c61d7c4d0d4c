#pragma once

// Minimization of gamma_hat over the gain scaling L, and (d, L) sweeps.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homgain/gain.hpp"

namespace homgain {

struct TunerOptions {
  std::size_t coarse_points = 17;
  double tol = 1e-2;  // relative width of the final L bracket
  GainOptions gain;
};

struct OptimalScaling {
  double L_star = 0.0;
  double gamma_star = 0.0;
  double L_lo = 0.0;
  double L_hi = 0.0;
  int evaluations = 0;
  bool boundary = false;    // coarse minimum on the edge of the range
  bool multimodal = false;  // coarse curve changes slope sign more than once
  std::vector<std::pair<double, double>> evaluated;  // (L, gamma_hat), in evaluation order
};

// The template supplies alpha, beta, d and a_tilde; its own L is ignored.
OptimalScaling optimize_L(const DifferentiatorConfig& tmpl, double L_min, double L_max,
                          const TunerOptions& opt = {});

// Number of sign changes of the forward differences of `values`.
int slope_sign_changes(std::span<const double> values);

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct SweepRow {
  double d = 0.0;
  double L = 0.0;
  double gamma_hat = 0.0;
  double gamma_noise = 0.0;
  double gamma_dist = 0.0;
  std::optional<double> hinf;
  std::string error;  // empty on success, otherwise the failure reason
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  GainOptions gain;
  CircleGrid circle;
};

SweepTable sweep(double alpha1, double alpha2, double beta, double margin,
                 std::span<const double> d_list, std::span<const double> L_list,
                 bool with_linear_baseline, const SweepOptions& opt = {});

}  // namespace homgain
