#pragma once

// Exact L2-gain (H-infinity norm) of the linear (d = 0) error dynamics
//   z' = A z + B (nu, delta),  y = C z
// with A = [[-k1~, k1~], [-k2~, 0]], B = [[-k1~, 0], [-k2~, 1/k1]], C = [0, k1~].

#include <Eigen/Dense>

#include "homgain/gain.hpp"

namespace homgain {

struct LinearErrorSystem {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d B = Eigen::Matrix2d::Zero();
  Eigen::RowVector2d C = Eigen::RowVector2d::Zero();

  bool is_hurwitz() const;
};

LinearErrorSystem build_linear_system(double alpha1, double alpha2, double L);
// Throws DomainError unless cfg.d() == 0.
LinearErrorSystem build_linear_system(const DifferentiatorConfig& cfg);

// Largest singular value of C (j omega I - A)^{-1} B.
double singular_value_at(const LinearErrorSystem& sys, double omega);

// Bisection on gamma with the Hamiltonian imaginary-axis eigenvalue test.
// Returns the upper end of the final bracket.
double hinf_norm(const LinearErrorSystem& sys, double tol = 1e-6,
                 double axis_threshold = 1e-8);

struct FrequencySweep {
  double omega_min = 1e-3;
  double omega_max = 1e5;
  std::size_t points = 4000;
  bool refine = true;
};

// Dense log-spaced sweep of the largest singular value (a lower bound on the norm).
double hinf_norm_sweep(const LinearErrorSystem& sys, const FrequencySweep& sweep = {});

}  // namespace homgain
