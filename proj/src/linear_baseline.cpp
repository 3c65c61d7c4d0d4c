#include "homgain/linear_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "homgain/errors.hpp"
#include "homgain/search.hpp"

namespace homgain {

bool LinearErrorSystem::is_hurwitz() const {
  const Eigen::EigenSolver<Eigen::Matrix2d> es(A, false);
  return (es.eigenvalues().real().array() < 0.0).all();
}

LinearErrorSystem build_linear_system(double alpha1, double alpha2, double L) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0) || !(L > 0.0)) {
    throw ConfigError("linear system requires positive alpha1, alpha2, L");
  }
  const double k1 = alpha1 * L;
  const double k2 = alpha2 * L * L;
  const double kt1 = k1;
  const double kt2 = k2 / k1;
  LinearErrorSystem sys;
  sys.A << -kt1, kt1, -kt2, 0.0;
  sys.B << -kt1, 0.0, -kt2, 1.0 / k1;
  sys.C << 0.0, kt1;
  return sys;
}

LinearErrorSystem build_linear_system(const DifferentiatorConfig& cfg) {
  if (cfg.d() != 0.0) throw DomainError("linear baseline requires d = 0");
  return build_linear_system(cfg.alpha1(), cfg.alpha2(), cfg.L());
}

double singular_value_at(const LinearErrorSystem& sys, double omega) {
  using cd = std::complex<double>;
  const Eigen::Matrix2cd M = cd(0.0, omega) * Eigen::Matrix2cd::Identity() - sys.A.cast<cd>();
  const Eigen::RowVector2cd G = sys.C.cast<cd>() * M.inverse() * sys.B.cast<cd>();
  return G.norm();  // a 1x2 row: its only singular value is the Euclidean norm
}

namespace {

bool has_imaginary_eigenvalue(const LinearErrorSystem& sys, double gamma, double threshold) {
  Eigen::Matrix4d H;
  H.topLeftCorner<2, 2>() = sys.A;
  H.topRightCorner<2, 2>() = sys.B * sys.B.transpose() / (gamma * gamma);
  H.bottomLeftCorner<2, 2>() = -sys.C.transpose() * sys.C;
  H.bottomRightCorner<2, 2>() = -sys.A.transpose();
  const Eigen::EigenSolver<Eigen::Matrix4d> es(H, false);
  for (const auto& lam : es.eigenvalues()) {
    if (std::abs(lam.real()) <= threshold * std::max(1.0, std::abs(lam))) return true;
  }
  return false;
}

}  // namespace

double hinf_norm(const LinearErrorSystem& sys, double tol, double axis_threshold) {
  if (!sys.is_hurwitz()) throw NumericError("hinf_norm: A is not Hurwitz");
  if (sys.C.isZero(0.0) || sys.B.isZero(0.0)) return 0.0;

  // Lower bound from the DC gain and the gains at the natural frequencies.
  double lo = singular_value_at(sys, 0.0);
  const Eigen::EigenSolver<Eigen::Matrix2d> es(sys.A, false);
  for (const auto& lam : es.eigenvalues()) lo = std::max(lo, singular_value_at(sys, std::abs(lam)));
  if (lo == 0.0) lo = 1e-300;

  double hi = 2.0 * lo;
  while (has_imaginary_eigenvalue(sys, hi, axis_threshold)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericError("hinf_norm: no upper bound found");
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (has_imaginary_eigenvalue(sys, mid, axis_threshold)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double hinf_norm_sweep(const LinearErrorSystem& sys, const FrequencySweep& sweep) {
  if (!sys.is_hurwitz()) throw NumericError("hinf_norm_sweep: A is not Hurwitz");
  const std::size_t n = std::max<std::size_t>(sweep.points, 2);
  const double l0 = std::log(sweep.omega_min);
  const double l1 = std::log(sweep.omega_max);
  const double h = (l1 - l0) / static_cast<double>(n - 1);
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = singular_value_at(sys, std::exp(l0 + h * static_cast<double>(i)));
    if (s > best) {
      best = s;
      arg = i;
    }
  }
  if (sweep.refine) {
    const double centre = l0 + h * static_cast<double>(arg);
    const auto r = search::golden_section_max(
        [&](double lw) { return singular_value_at(sys, std::exp(lw)); },
        std::max(l0, centre - h), std::min(l1, centre + h), 1e-12);
    best = std::max(best, r.value);
  }
  return best;
}

}  // namespace homgain
