#pragma once

// Independent reference formulas for the tests. Written directly from the
// closed-form expressions, without calling into the library.

#include <cmath>
#include <complex>
#include <random>

namespace oracle {

inline double spow(double x, double p) { return (x < 0 ? -1.0 : 1.0) * std::pow(std::abs(x), p); }

inline double V(double z1, double z2, double d, double beta) {
  return (1 - d) / (2 - d) * std::pow(std::abs(z1), (2 - d) / (1 - d)) - z1 * z2 +
         (1 + beta) / (2 - d) * std::pow(std::abs(z2), 2 - d);
}

inline double mu(double z1, double z2, double d) {
  const double s = spow(z1, 1 / (1 - d)) - z2;
  return s * s;
}

inline double eta(double z1, double z2, double d, double beta) {
  return (1 + beta) * (z1 - spow(z2, 1 - d)) * spow(z1, (1 + d) / (1 - d)) -
         beta * std::pow(std::abs(z1), 2 / (1 - d));
}

struct Params {
  double a1, a2, beta, d, L, at;
};

// Value function of the dissipation inequality written out term by term.
inline double J(double z1, double z2, double nu, double delta, double gamma, const Params& p) {
  const double e1 = spow(z1, 1 / (1 - p.d)) - z2;
  const double e2 = spow(z1 + nu, 1 / (1 - p.d)) - z2;
  const double c = -z1 + (1 + p.beta) * spow(z2, 1 - p.d);
  const double bracket = -p.a1 * e1 * e2 +
                         c * (-(p.a2 / p.a1) * spow(z1 + nu, (1 + p.d) / (1 - p.d)) +
                              delta / (p.L * p.L * p.a1));
  const double w = std::pow(std::abs(nu), 2 / (1 - p.d)) + std::pow(std::abs(delta), 2 / (1 + p.d));
  return p.at * bracket + p.a1 * p.a1 * z2 * z2 - (gamma / p.L) * (gamma / p.L) * w;
}

// Largest singular value of a 1x2 transfer row C (jw - A)^{-1} B, 2x2 A.
inline double sigma(const double A[2][2], const double B[2][2], const double C[2], double w) {
  using cd = std::complex<double>;
  const cd j(0.0, w);
  const cd m00 = j - A[0][0], m01 = -A[0][1], m10 = -A[1][0], m11 = j - A[1][1];
  const cd det = m00 * m11 - m01 * m10;
  // C * inv(M) = [C0 m11 - C1 m10, -C0 m01 + C1 m00] / det
  const cd r0 = (C[0] * m11 - C[1] * m10) / det;
  const cd r1 = (-C[0] * m01 + C[1] * m00) / det;
  const cd g0 = r0 * B[0][0] + r1 * B[1][0];
  const cd g1 = r0 * B[0][1] + r1 * B[1][1];
  return std::sqrt(std::norm(g0) + std::norm(g1));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261014);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace oracle
