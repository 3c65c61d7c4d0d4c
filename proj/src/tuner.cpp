#include "homgain/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "homgain/errors.hpp"
#include "homgain/linear_baseline.hpp"

namespace homgain {

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  const double a = std::log(lo);
  const double b = std::log(hi);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  out.back() = hi;
  return out;
}

int slope_sign_changes(std::span<const double> values) {
  int changes = 0;
  int last = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double diff = values[i] - values[i - 1];
    const int s = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

OptimalScaling optimize_L(const DifferentiatorConfig& tmpl, double L_min, double L_max,
                          const TunerOptions& opt) {
  if (!(L_min > 0.0) || !(L_max >= L_min)) throw ConfigError("L range must satisfy 0 < L_min <= L_max");

  // a_tilde is L-independent, so one precomputed sphere serves every L.
  const ValueFunctionSphere sphere(tmpl, Channel::joint, opt.gain.grid);
  OptimalScaling out;
  auto objective = [&](double L) {
    const double g = sphere.estimate(L, opt.gain.tol, opt.gain.cap).gamma_hat;
    out.evaluated.emplace_back(L, g);
    ++out.evaluations;
    return g;
  };

  if (L_max == L_min) {
    out.L_star = L_min;
    out.gamma_star = objective(L_min);
    out.L_lo = out.L_hi = L_min;
    return out;
  }

  const auto grid = log_spaced(L_min, L_max, std::max<std::size_t>(opt.coarse_points, 3));
  std::vector<double> values;
  values.reserve(grid.size());
  for (double L : grid) values.push_back(objective(L));
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  out.boundary = best == 0 || best + 1 == grid.size();
  out.multimodal = slope_sign_changes(values) > 1;

  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  // Golden section in log L down to the relative tolerance.
  const auto r = search::golden_section_min([&](double lL) { return objective(std::exp(lL)); },
                                            std::log(lo), std::log(hi), opt.tol);
  out.L_lo = std::exp(r.lo);
  out.L_hi = std::exp(r.hi);

  // Best of everything evaluated, so gamma(L*) <= gamma(L) for all evaluated L.
  const auto it = std::min_element(out.evaluated.begin(), out.evaluated.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
  out.L_star = it->first;
  out.gamma_star = it->second;
  return out;
}

SweepTable sweep(double alpha1, double alpha2, double beta, double margin,
                 std::span<const double> d_list, std::span<const double> L_list,
                 bool with_linear_baseline, const SweepOptions& opt) {
  for (double d : d_list) {
    if (!(d > -1.0 && d < 1.0)) throw ConfigError("sweep: every d must lie in (-1, 1)");
  }
  for (double L : L_list) {
    if (!(L > 0.0)) throw ConfigError("sweep: every L must be positive");
  }
  std::vector<double> ds(d_list.begin(), d_list.end());
  std::vector<double> Ls(L_list.begin(), L_list.end());
  std::sort(ds.begin(), ds.end());
  std::sort(Ls.begin(), Ls.end());

  SweepTable table;
  if (Ls.empty()) return table;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (double d : ds) {
    std::optional<DifferentiatorConfig> cfg;
    std::string failure;
    try {
      cfg = DifferentiatorConfig::with_margin(alpha1, alpha2, beta, d, Ls.front(), margin,
                                              opt.circle);
    } catch (const AssumptionError& e) {
      failure = e.reason();
    }

    std::optional<ValueFunctionSphere> joint, noise, dist;
    if (cfg) {
      joint.emplace(*cfg, Channel::joint, opt.gain.grid);
      noise.emplace(*cfg, Channel::noise_only, opt.gain.grid);
      dist.emplace(*cfg, Channel::disturbance_only, opt.gain.grid);
    }
    for (double L : Ls) {
      SweepRow row{d, L, nan, nan, nan, std::nullopt, failure};
      if (with_linear_baseline && d == 0.0) {
        row.hinf = hinf_norm(build_linear_system(alpha1, alpha2, L));
      }
      if (cfg) {
        try {
          row.gamma_hat = joint->estimate(L, opt.gain.tol, opt.gain.cap).gamma_hat;
          row.gamma_noise = noise->estimate(L, opt.gain.tol, opt.gain.cap).gamma_hat;
          row.gamma_dist = dist->estimate(L, opt.gain.tol, opt.gain.cap).gamma_hat;
        } catch (const NumericError& e) {
          row.error = e.reason();
        }
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace homgain
