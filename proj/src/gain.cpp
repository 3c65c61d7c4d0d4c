#include "homgain/gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

#include "homgain/errors.hpp"

namespace homgain {

// ---------------------------------------------------------------------------
// DifferentiatorConfig

DifferentiatorConfig DifferentiatorConfig::create(double alpha1, double alpha2, double beta,
                                                  double d, double L, double a_tilde,
                                                  const CircleGrid& grid) {
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw ConfigError("alpha1, alpha2 must be positive");
  if (!(L > 0.0)) throw ConfigError("gain scaling L must be positive");
  const LyapunovParams lp{d, beta};
  lp.validate();

  const auto check = check_assumption1(alpha1, alpha2, lp, grid);
  if (!check.satisfied) {
    std::ostringstream os;
    os << "gain-ratio condition violated: max g = " << check.g_max
       << " >= alpha1^2/alpha2 = " << check.bound;
    throw AssumptionError("assumption1", os.str());
  }
  const auto scale = compute_storage_scale(alpha1, alpha2, lp, 1.0, grid);
  if (!(a_tilde > scale.M)) {
    std::ostringstream os;
    os << "storage scale a_tilde = " << a_tilde << " must exceed M = " << scale.M;
    throw AssumptionError("storage", os.str());
  }

  DifferentiatorConfig cfg;
  cfg.alpha1_ = alpha1;
  cfg.alpha2_ = alpha2;
  cfg.beta_ = beta;
  cfg.d_ = d;
  cfg.L_ = L;
  cfg.a_tilde_ = a_tilde;
  cfg.M_ = scale.M;
  cfg.g_max_ = check.g_max;
  return cfg;
}

DifferentiatorConfig DifferentiatorConfig::with_margin(double alpha1, double alpha2,
                                                       double beta, double d, double L,
                                                       double margin, const CircleGrid& grid) {
  const LyapunovParams lp{d, beta};
  lp.validate();
  const auto scale = compute_storage_scale(alpha1, alpha2, lp, margin, grid);
  return create(alpha1, alpha2, beta, d, L, scale.a_tilde, grid);
}

DifferentiatorConfig DifferentiatorConfig::with_scaling(double L) const {
  if (!(L > 0.0)) throw ConfigError("gain scaling L must be positive");
  DifferentiatorConfig out = *this;
  out.L_ = L;
  return out;
}

// ---------------------------------------------------------------------------
// Value function

namespace {

double storage_coupling(const Vec2& z, double beta, double d) {
  return -z[0] + (1.0 + beta) * signed_power(z[1], 1.0 - d);
}

double abs_pow(double x, double p) { return x == 0.0 ? 0.0 : std::pow(std::abs(x), p); }

}  // namespace

double J_hat(const Vec2& z, double nu, double delta, double gamma,
             const DifferentiatorConfig& cfg) {
  if (!(gamma >= 0.0)) throw DomainError("J_hat: gamma must be non-negative");
  const double d = cfg.d();
  const double a1 = cfg.alpha1();
  const double L = cfg.L();
  const double w = z[0] + nu;
  const double e1 = signed_power(z[0], 1.0 / (1.0 - d)) - z[1];
  const double e2 = signed_power(w, 1.0 / (1.0 - d)) - z[1];
  const double c = storage_coupling(z, cfg.beta(), d);
  const double drive =
      -cfg.alpha2() / a1 * signed_power(w, (1.0 + d) / (1.0 - d)) + delta / (L * L * a1);
  const double supply = (gamma / L) * (gamma / L) *
                        (abs_pow(nu, 2.0 / (1.0 - d)) + abs_pow(delta, 2.0 / (1.0 + d)));
  return cfg.a_tilde() * (-a1 * e1 * e2 + c * drive) + a1 * a1 * z[1] * z[1] - supply;
}

double delta_star(const Vec2& z, double gamma, const DifferentiatorConfig& cfg) {
  if (!(gamma > 0.0)) throw DomainError("delta_star: gamma must be positive");
  const double d = cfg.d();
  const double c = storage_coupling(z, cfg.beta(), d);
  const double s = cfg.a_tilde() * (1.0 + d) / (2.0 * cfg.alpha1() * gamma * gamma) * c;
  return signed_power(s, (1.0 + d) / (1.0 - d));
}

double J_tilde(const Vec2& z, double nu, double gamma, const DifferentiatorConfig& cfg) {
  return J_hat(z, nu, delta_star(z, gamma, cfg), gamma, cfg);
}

// ---------------------------------------------------------------------------
// ValueFunctionSphere

ValueFunctionSphere::ValueFunctionSphere(const DifferentiatorConfig& cfg, Channel channel,
                                         const SphereGrid& grid)
    : cfg_(cfg), channel_(channel), grid_(grid) {
  const WeightSystem ws = cfg.weights();
  weights_ = channel == Channel::disturbance_only ? ws.state_disturbance() : ws.state_noise();
  n1_ = std::max<std::size_t>(grid.polar, 4);
  n2_ = std::max<std::size_t>(grid.azimuth, 4);
  off1_ = search::grid_offset(grid.seed, 1);
  off2_ = search::grid_offset(grid.seed, 2);

  const std::size_t n = n1_ * n2_;
  t0_.resize(n);
  t1_.resize(n);
  if (channel != Channel::noise_only) t2_.resize(n);

  const double d = cfg.d();
  const double beta = cfg.beta();
  search::parallel_for(n1_, resolve_threads(grid.threads), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double p1 = phi1_at(i);
      for (std::size_t j = 0; j < n2_; ++j) {
        const auto pt = sphere_param3(p1, phi2_at(j), weights_);
        const Vec2 z{pt.z1, pt.z2};
        const std::size_t k = i * n2_ + j;
        switch (channel_) {
          case Channel::joint:
            t0_[k] = J_hat(z, pt.w, 0.0, 0.0, cfg_);
            t1_[k] = abs_pow(pt.w, 2.0 / (1.0 - d));
            t2_[k] = abs_pow(storage_coupling(z, beta, d), 2.0 / (1.0 - d));
            break;
          case Channel::noise_only:
            t0_[k] = J_hat(z, pt.w, 0.0, 0.0, cfg_);
            t1_[k] = abs_pow(pt.w, 2.0 / (1.0 - d));
            break;
          case Channel::disturbance_only:
            t0_[k] = J_hat(z, 0.0, 0.0, 0.0, cfg_);
            t1_[k] = storage_coupling(z, beta, d) * pt.w;
            t2_[k] = abs_pow(pt.w, 2.0 / (1.0 + d));
            break;
        }
      }
    }
  });
}

double ValueFunctionSphere::phi1_at(std::size_t i) const {
  return std::numbers::pi * (static_cast<double>(i) + off1_) / static_cast<double>(n1_);
}

double ValueFunctionSphere::phi2_at(std::size_t j) const {
  return std::numbers::pi * (static_cast<double>(j) + off2_) / static_cast<double>(n2_);
}

SpherePoint3 ValueFunctionSphere::point(double phi1, double phi2) const {
  return sphere_param3(phi1, phi2, weights_);
}

// Coefficients of T1 and T2 for given (gamma, L).
void ValueFunctionSphere::coefficients(double gamma, double L, double& a, double& e) const {
  const double d = cfg_.d();
  const double b = (gamma / L) * (gamma / L);
  switch (channel_) {
    case Channel::joint: {
      // max_delta (A delta - b |delta|^p), p = 2/(1+d), A = a_tilde c / (L^2 alpha1):
      //   ((1-d)/2) (2/(1+d))^{-(1+d)/(1-d)} |A|^{2/(1-d)} b^{-(1+d)/(1-d)}
      const double q = (1.0 + d) / (1.0 - d);
      const double lead = 0.5 * (1.0 - d) * std::pow(2.0 / (1.0 + d), -q);
      const double coupling = cfg_.a_tilde() / (L * L * cfg_.alpha1());
      a = -b;
      e = lead * std::pow(coupling, 2.0 / (1.0 - d)) * std::pow(b, -q);
      break;
    }
    case Channel::noise_only:
      a = -b;
      e = 0.0;
      break;
    case Channel::disturbance_only:
      a = cfg_.a_tilde() / (L * L * cfg_.alpha1());
      e = -b;
      break;
  }
}

double ValueFunctionSphere::evaluate(double phi1, double phi2, double gamma, double L) const {
  const auto pt = point(phi1, phi2);
  const Vec2 z{pt.z1, pt.z2};
  const auto cfg = cfg_.with_scaling(L);
  switch (channel_) {
    case Channel::joint:
      return J_tilde(z, pt.w, gamma, cfg);
    case Channel::noise_only:
      return J_hat(z, pt.w, 0.0, gamma, cfg);
    case Channel::disturbance_only:
      return J_hat(z, 0.0, pt.w, gamma, cfg);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

// Maps arbitrary angles to phi1 in [0, pi], phi2 in [0, 2 pi).
std::pair<double, double> canonical_angles(double phi1, double phi2) {
  const double s = std::sin(phi1);
  const double x = s * std::cos(phi2);
  const double y = s * std::sin(phi2);
  const double zc = std::clamp(std::cos(phi1), -1.0, 1.0);
  double p2 = std::atan2(y, x);
  if (p2 < 0.0) p2 += 2.0 * std::numbers::pi;
  return {std::acos(zc), p2};
}

}  // namespace

std::vector<double> ValueFunctionSphere::scan(double gamma, double L) const {
  double a = 0.0;
  double e = 0.0;
  coefficients(gamma, L, a, e);
  const std::size_t n = n1_ * n2_;
  std::vector<double> v(n);
  const int threads = resolve_threads(grid_.threads);
  search::parallel_for(n, threads, [&](std::size_t b, std::size_t end) {
    if (t2_.empty()) {
      for (std::size_t k = b; k < end; ++k) v[k] = t0_[k] + a * t1_[k];
    } else {
      for (std::size_t k = b; k < end; ++k) v[k] = t0_[k] + a * t1_[k] + e * t2_[k];
    }
  });
  return v;
}

SphereMax ValueFunctionSphere::maximize(double gamma, double L) const {
  if (!(gamma > 0.0)) throw DomainError("sphere maximization requires gamma > 0");
  if (!(L > 0.0)) throw DomainError("sphere maximization requires L > 0");
  const std::vector<double> v = scan(gamma, L);

  // Grid local maxima (ties broken by index), best first.
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t i = 0; i < n1_; ++i) {
    for (std::size_t j = 0; j < n2_; ++j) {
      const std::size_t k = i * n2_ + j;
      const double vk = v[k];
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ii = static_cast<std::ptrdiff_t>(i) + di;
          const auto jj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<std::ptrdiff_t>(n1_) ||
              jj >= static_cast<std::ptrdiff_t>(n2_)) {
            continue;
          }
          const std::size_t kn = static_cast<std::size_t>(ii) * n2_ + static_cast<std::size_t>(jj);
          if (v[kn] > vk || (v[kn] == vk && kn < k)) {
            peak = false;
            break;
          }
        }
      }
      if (peak) peaks.emplace_back(vk, k);
    }
  }
  const std::size_t keep = std::min(std::max<std::size_t>(grid_.starts, 1), peaks.size());
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                    [](const auto& x, const auto& y) {
                      return x.first > y.first || (x.first == y.first && x.second < y.second);
                    });

  SphereMax best;
  best.value = -std::numeric_limits<double>::infinity();
  const double step = std::numbers::pi / static_cast<double>(std::max(n1_, n2_));
  for (std::size_t s = 0; s < keep; ++s) {
    const std::size_t k = peaks[s].second;
    const double p1 = phi1_at(k / n2_);
    const double p2 = phi2_at(k % n2_);
    // Grid value recomputed pointwise so that every candidate is an exact evaluation.
    const double grid_value = evaluate(p1, p2, gamma, L);
    if (grid_value > best.value) best = {grid_value, p1, p2};
    const auto r = search::nelder_mead_max(
        [&](double x, double y) { return evaluate(x, y, gamma, L); }, p1, p2, step, 1e-10, 300);
    if (r.value > best.value) best = {r.value, r.x, r.y};
  }
  const auto [c1, c2] = canonical_angles(best.phi1, best.phi2);
  best.phi1 = c1;
  best.phi2 = c2;
  return best;
}

GainEstimate ValueFunctionSphere::estimate(double L, double tol, double cap) const {
  if (!(L > 0.0)) throw DomainError("gain estimate requires L > 0");
  if (!(tol > 0.0)) throw DomainError("gain estimate requires a positive tolerance");
  GainEstimate out;
  double lo = 0.0;
  double hi = 1.0;
  SphereMax cert = maximize(hi, L);
  ++out.iterations;
  while (!(cert.value < 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) {
      std::ostringstream os;
      os << "no feasible gain below cap " << cap << " at L = " << L;
      throw NumericError(os.str());
    }
    cert = maximize(hi, L);
    ++out.iterations;
  }
  constexpr int max_bisections = 200;
  for (int it = 0; it < max_bisections && hi - lo > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const SphereMax m = maximize(mid, L);
    ++out.iterations;
    if (m.value < 0.0) {
      hi = mid;
      cert = m;
    } else {
      lo = mid;
    }
  }
  out.gamma_hat = hi;
  out.J_max = cert.value;
  out.phi1 = cert.phi1;
  out.phi2 = cert.phi2;
  out.gamma_lo = lo;
  out.gamma_hi = hi;
  return out;
}

SphereMax max_J_tilde(double gamma, const DifferentiatorConfig& cfg, const SphereGrid& grid) {
  return ValueFunctionSphere(cfg, Channel::joint, grid).maximize(gamma, cfg.L());
}

GainEstimate estimate_gamma(const DifferentiatorConfig& cfg, const GainOptions& opt) {
  return ValueFunctionSphere(cfg, Channel::joint, opt.grid).estimate(cfg.L(), opt.tol, opt.cap);
}

GainEstimate estimate_gamma_noise_only(const DifferentiatorConfig& cfg, const GainOptions& opt) {
  return ValueFunctionSphere(cfg, Channel::noise_only, opt.grid)
      .estimate(cfg.L(), opt.tol, opt.cap);
}

GainEstimate estimate_gamma_dist_only(const DifferentiatorConfig& cfg, const GainOptions& opt) {
  return ValueFunctionSphere(cfg, Channel::disturbance_only, opt.grid)
      .estimate(cfg.L(), opt.tol, opt.cap);
}

}  // namespace homgain
