#pragma once

// Storage function V_h = a_tilde * L * V_l. The scale must exceed
//   M = max over the homogeneous circle of
//   m(z) = alpha1^2 |z2|^2 / (alpha1 mu(z) - (alpha2/alpha1) eta(z)),
// which does not depend on the gain scaling L.

#include "homgain/lyapunov.hpp"

namespace homgain {

struct StorageScale {
  double M = 0.0;
  double a_tilde = 0.0;
  double margin = 0.0;
  double argmax_phi = 0.0;
};

// Throws NumericError when the denominator is not positive, which means
// the gain-ratio condition is violated at z.
double storage_ratio(const Vec2& z, double alpha1, double alpha2, const LyapunovParams& p);

// Checks the gain-ratio condition (throws AssumptionError "assumption1"), then a_tilde = M + margin.
StorageScale compute_storage_scale(double alpha1, double alpha2, const LyapunovParams& p,
                                   double margin = 1.0, const CircleGrid& grid = {});

}  // namespace homgain
