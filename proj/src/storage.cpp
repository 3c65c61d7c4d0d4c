#include "homgain/storage.hpp"

#include <cmath>
#include <sstream>

#include "homgain/errors.hpp"

namespace homgain {

double storage_ratio(const Vec2& z, double alpha1, double alpha2, const LyapunovParams& p) {
  const double den = alpha1 * lyapunov_mu(z, p.d) - alpha2 / alpha1 * lyapunov_eta(z, p);
  if (!(den > 0.0)) {
    std::ostringstream os;
    os << "storage ratio denominator " << den << " <= 0 at z = (" << z[0] << ", " << z[1]
       << "): gain-ratio condition violated";
    throw NumericError(os.str());
  }
  return alpha1 * alpha1 * z[1] * z[1] / den;
}

StorageScale compute_storage_scale(double alpha1, double alpha2, const LyapunovParams& p,
                                   double margin, const CircleGrid& grid) {
  if (!(margin > 0.0)) throw ConfigError("storage margin must be positive");
  const auto check = check_assumption1(alpha1, alpha2, p, grid);
  if (!check.satisfied) {
    std::ostringstream os;
    os << "gain-ratio condition violated: max g = " << check.g_max
       << " >= alpha1^2/alpha2 = " << check.bound;
    throw AssumptionError("assumption1", os.str());
  }
  const Vec2 r{1.0 - p.d, 1.0};
  const auto best = search::maximize_half_circle(
      [&](double phi) {
        const auto s = sphere_param2(phi, r);
        return storage_ratio({s.z1, s.z2}, alpha1, alpha2, p);
      },
      grid);
  return {best.value, best.value + margin, margin, best.arg};
}

}  // namespace homgain
