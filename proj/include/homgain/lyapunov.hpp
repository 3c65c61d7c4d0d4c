#pragma once

// Homogeneous Lyapunov function of the unperturbed error dynamics,
//   V_l(z) = (1-d)/(2-d) |z1|^{(2-d)/(1-d)} - z1 z2 + (1+beta)/(2-d) |z2|^{2-d},
// its derivative split dV_l/dt = -k1~ mu(z) + k2~ eta(z), and the gain-ratio
// condition k1~/k2~ = alpha1^2/alpha2 > max g, g = eta/mu.

#include "homgain/hom_core.hpp"
#include "homgain/search.hpp"

namespace homgain {

struct LyapunovParams {
  double d = 0.0;
  double beta = 1.0;

  // Throws ConfigError unless beta > 0 and d in (-1, 1).
  void validate() const;
  // Degree of V_l under the state weights.
  double degree() const { return 2.0 - d; }
};

double lyapunov_value(const Vec2& z, const LyapunovParams& p);
Vec2 lyapunov_gradient(const Vec2& z, const LyapunovParams& p);

double lyapunov_mu(const Vec2& z, double d);
double lyapunov_eta(const Vec2& z, const LyapunovParams& p);

// eta/mu; -inf where mu < mu_floor (eta < 0 there, so never a maximizer).
double gain_ratio(const Vec2& z, const LyapunovParams& p, double mu_floor = 1e-14);

// Unforced right-hand side of the error dynamics for gains (k1~, k2~).
Vec2 unforced_field(const Vec2& z, double k1_tilde, double k2_tilde, double d);

struct GainRatioCheck {
  double g_max = 0.0;
  double bound = 0.0;  // alpha1^2 / alpha2
  bool satisfied = false;
  double argmax_phi = 0.0;  // on the homogeneous circle, sphere_param2 convention
};

GainRatioCheck check_assumption1(double alpha1, double alpha2, const LyapunovParams& p,
                                 const CircleGrid& grid = {});

}  // namespace homgain
