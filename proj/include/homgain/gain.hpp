#pragma once

// Upper estimate gamma_hat of the homogeneous L2-gain from (nu, delta) to the
// differentiation error, certified by the storage function a_tilde * L * V_l.
//
// With k1 = alpha1 L, k2 = alpha2 L^2 the dissipation inequality divided by L^2
// reads J_hat(z, nu, delta) < 0 with
//
//   J_hat = a_tilde [ -alpha1 (|z1|^{1/(1-d)} - z2)(|z1+nu|^{1/(1-d)} - z2)
//                     + c(z) (-(alpha2/alpha1) |z1+nu|^{(1+d)/(1-d)} + delta/(L^2 alpha1)) ]
//           + alpha1^2 z2^2 - (gamma/L)^2 (|nu|^{2/(1-d)} + |delta|^{2/(1+d)}),
//   c(z)  = -z1 + (1+beta) |z2|^{1-d}       (all powers sign-preserving)
//
// J_hat is concave in delta; eliminating delta at its maximizer delta* gives
// J_tilde(z, nu; gamma), whose maximum over the homogeneous unit sphere in
// (z, nu) decides feasibility of gamma.

#include <cstddef>
#include <vector>

#include "homgain/hom_core.hpp"
#include "homgain/lyapunov.hpp"
#include "homgain/search.hpp"
#include "homgain/storage.hpp"

namespace homgain {

class DifferentiatorConfig {
 public:
  // Validates ranges, the gain-ratio condition and a_tilde > M.
  static DifferentiatorConfig create(double alpha1, double alpha2, double beta, double d,
                                     double L, double a_tilde, const CircleGrid& grid = {});
  // a_tilde = M + margin.
  static DifferentiatorConfig with_margin(double alpha1, double alpha2, double beta, double d,
                                          double L, double margin = 1.0,
                                          const CircleGrid& grid = {});

  // Same differentiator with another gain scaling; the gain-ratio condition and M do not
  // depend on L, so nothing is re-validated beyond L > 0.
  DifferentiatorConfig with_scaling(double L) const;

  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  double beta() const { return beta_; }
  double d() const { return d_; }
  double L() const { return L_; }
  double a_tilde() const { return a_tilde_; }
  double storage_max() const { return M_; }
  double g_max() const { return g_max_; }

  double k1() const { return alpha1_ * L_; }
  double k2() const { return alpha2_ * L_ * L_; }
  double k1_tilde() const { return k1(); }
  double k2_tilde() const { return k2() / k1(); }

  LyapunovParams lyapunov() const { return {d_, beta_}; }
  WeightSystem weights() const { return WeightSystem::for_degree(d_); }

 private:
  DifferentiatorConfig() = default;

  double alpha1_ = 0.0;
  double alpha2_ = 0.0;
  double beta_ = 0.0;
  double d_ = 0.0;
  double L_ = 1.0;
  double a_tilde_ = 0.0;
  double M_ = 0.0;
  double g_max_ = 0.0;
};

double J_hat(const Vec2& z, double nu, double delta, double gamma,
             const DifferentiatorConfig& cfg);
double delta_star(const Vec2& z, double gamma, const DifferentiatorConfig& cfg);
double J_tilde(const Vec2& z, double nu, double gamma, const DifferentiatorConfig& cfg);

struct SphereMax {
  double value = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

struct GainEstimate {
  double gamma_hat = 0.0;
  double J_max = 0.0;  // certified maximum at gamma_hat, < 0
  double phi1 = 0.0;
  double phi2 = 0.0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  int iterations = 0;
};

struct GainOptions {
  double tol = 1e-3;
  double cap = 1e6;
  SphereGrid grid;
};

// Which input channels enter the dissipation inequality.
enum class Channel {
  joint,             // (nu, delta), delta eliminated through delta*
  noise_only,        // delta = 0, sphere in (z, nu)
  disturbance_only,  // nu = 0, sphere in (z, delta)
};

// Precomputed gamma- and L-independent terms of the value function on a
// fixed sphere grid, so that the maximum for any (gamma, L) is a cheap
//   J = T0 + a(gamma, L) T1 + e(gamma, L) T2
// scan, followed by exact Nelder-Mead refinement from the best local maxima.
class ValueFunctionSphere {
 public:
  ValueFunctionSphere(const DifferentiatorConfig& cfg, Channel channel,
                      const SphereGrid& grid = {});

  // Value at the point with angles (phi1, phi2) evaluated pointwise.
  double evaluate(double phi1, double phi2, double gamma, double L) const;
  SphereMax maximize(double gamma, double L) const;
  GainEstimate estimate(double L, double tol = 1e-3, double cap = 1e6) const;

  Channel channel() const { return channel_; }
  const SphereGrid& grid() const { return grid_; }
  SpherePoint3 point(double phi1, double phi2) const;

  // Grid values at (phi1_at(i), phi2_at(j)), row-major in i, from the
  // precomputed tables.
  std::vector<double> scan(double gamma, double L) const;
  std::size_t polar_points() const { return n1_; }
  std::size_t azimuth_points() const { return n2_; }
  double phi1_at(std::size_t i) const;
  double phi2_at(std::size_t j) const;

 private:
  void coefficients(double gamma, double L, double& a, double& e) const;

  DifferentiatorConfig cfg_;
  Channel channel_;
  SphereGrid grid_;
  Vec3 weights_;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  double off1_ = 0.5;
  double off2_ = 0.5;
  std::vector<double> t0_, t1_, t2_;
};

SphereMax max_J_tilde(double gamma, const DifferentiatorConfig& cfg,
                      const SphereGrid& grid = {});

GainEstimate estimate_gamma(const DifferentiatorConfig& cfg, const GainOptions& opt = {});
GainEstimate estimate_gamma_noise_only(const DifferentiatorConfig& cfg,
                                       const GainOptions& opt = {});
GainEstimate estimate_gamma_dist_only(const DifferentiatorConfig& cfg,
                                      const GainOptions& opt = {});

}  // namespace homgain
