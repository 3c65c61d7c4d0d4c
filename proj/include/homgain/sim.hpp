#pragma once

// Forward-Euler simulation of the second-order differentiator, in error
// coordinates z and in original coordinates x, plus truncated classical and
// homogeneous L2 norms and the dilation experiments built on them.

#include <cstddef>
#include <span>
#include <vector>

#include "homgain/gain.hpp"
#include "homgain/hom_core.hpp"

namespace homgain {

// Base signal f0 = a0 sin(omega0 t), noise nu = a_nu sin(omega_nu t) entering
// the error dynamics as z1 + nu (measured signal f0 - nu), disturbance
// delta = -f0'' = a0 omega0^2 sin(omega0 t).
//
// With dilation kappa != 1 the inputs become Delta_kappa^{r_u}(u(kappa^{-r_t} t)),
// the initial error Delta_kappa^{r_z}(z0) and the horizon kappa^{r_t} T.
struct SimScenario {
  explicit SimScenario(DifferentiatorConfig c) : cfg(std::move(c)) {}

  double a0 = 0.5;
  double omega0 = 0.5;
  double a_nu = 0.002;
  double omega_nu = 1000.0;
  Vec2 z0{0.0, 0.02};
  double periods = 10.0;
  double sample_time = 1e-4;
  double dilation = 1.0;
  bool noise = true;
  bool disturbance = true;
  DifferentiatorConfig cfg;

  void validate() const;
  double horizon() const;
  std::size_t steps() const;
  double nu(double t) const;
  double delta(double t) const;
};

struct ErrorTrajectory {
  SampledSignal z;  // (z1, z2)
  SampledSignal y;  // k1~ z2
  SampledSignal u;  // (nu, delta)
};

// Records (z, y, u) at t_k = k tau_s for k = 0 .. steps()-1 before each Euler update.
ErrorTrajectory integrate_error_dynamics(const SimScenario& scn);

struct DifferentiatorTrajectory {
  SampledSignal x;  // (x1, x2)
  SampledSignal h;  // x2 - f0'
  SampledSignal z;  // (x1 - f0, (x2 - f0') / k1)
};

// Original coordinates driven by the measured signal f0 - nu. Dilation must be 1.
DifferentiatorTrajectory integrate_differentiator_x(const SimScenario& scn);

// (sum_k |s_k|^2 tau_s)^{1/2}, Euclidean instantaneous norm.
double truncated_L2(const SampledSignal& s);
// (sum_k [[s_k]]_{r,2}^2 tau_s)^{1/2}, homogeneous instantaneous norm.
double truncated_L2h(const SampledSignal& s, std::span<const double> r);

struct QuotientReport {
  double gamma_T = 0.0;
  double gamma_hT = 0.0;
  double kappa = 1.0;
  double gamma_T_dilated = 0.0;
  double gamma_hT_dilated = 0.0;
};

QuotientReport quotient_experiment(const SimScenario& scn, double kappa);

struct RatioRow {
  double kappa = 1.0;
  double ratio_nu = 1.0;     // kappa^d
  double ratio_delta = 1.0;  // kappa^-d
  double ratio_hom = 1.0;
};

std::vector<RatioRow> analytic_ratio_curves(double d, std::span<const double> kappas);

}  // namespace homgain
