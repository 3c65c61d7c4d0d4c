#include "homgain/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "homgain/errors.hpp"

namespace homgain {

void LyapunovParams::validate() const {
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (!(d > -1.0 && d < 1.0)) throw ConfigError("d must lie in (-1, 1)");
}

double lyapunov_value(const Vec2& z, const LyapunovParams& p) {
  const double d = p.d;
  const double a = std::abs(z[0]);
  const double b = std::abs(z[1]);
  const double t1 = a == 0.0 ? 0.0 : (1.0 - d) / (2.0 - d) * std::pow(a, (2.0 - d) / (1.0 - d));
  const double t3 = b == 0.0 ? 0.0 : (1.0 + p.beta) / (2.0 - d) * std::pow(b, 2.0 - d);
  return t1 - z[0] * z[1] + t3;
}

Vec2 lyapunov_gradient(const Vec2& z, const LyapunovParams& p) {
  const double d = p.d;
  return {signed_power(z[0], 1.0 / (1.0 - d)) - z[1],
          -z[0] + (1.0 + p.beta) * signed_power(z[1], 1.0 - d)};
}

double lyapunov_mu(const Vec2& z, double d) {
  const double e = signed_power(z[0], 1.0 / (1.0 - d)) - z[1];
  return e * e;
}

double lyapunov_eta(const Vec2& z, const LyapunovParams& p) {
  const double d = p.d;
  const double a = std::abs(z[0]);
  const double last = a == 0.0 ? 0.0 : p.beta * std::pow(a, 2.0 / (1.0 - d));
  return (1.0 + p.beta) * (z[0] - signed_power(z[1], 1.0 - d)) *
             signed_power(z[0], (1.0 + d) / (1.0 - d)) -
         last;
}

double gain_ratio(const Vec2& z, const LyapunovParams& p, double mu_floor) {
  const double mu = lyapunov_mu(z, p.d);
  if (mu < mu_floor) return -std::numeric_limits<double>::infinity();
  return lyapunov_eta(z, p) / mu;
}

Vec2 unforced_field(const Vec2& z, double k1_tilde, double k2_tilde, double d) {
  return {-k1_tilde * (signed_power(z[0], 1.0 / (1.0 - d)) - z[1]),
          -k2_tilde * signed_power(z[0], (1.0 + d) / (1.0 - d))};
}

GainRatioCheck check_assumption1(double alpha1, double alpha2, const LyapunovParams& p,
                                 const CircleGrid& grid) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw ConfigError("gains alpha1, alpha2 must be positive");
  }
  p.validate();
  const Vec2 r{1.0 - p.d, 1.0};
  const auto best = search::maximize_half_circle(
      [&](double phi) {
        const auto s = sphere_param2(phi, r);
        return gain_ratio({s.z1, s.z2}, p, grid.mu_floor);
      },
      grid);
  GainRatioCheck out;
  out.g_max = best.value;
  out.bound = alpha1 * alpha1 / alpha2;
  out.satisfied = out.g_max < out.bound;
  out.argmax_phi = best.arg;
  return out;
}

}  // namespace homgain
