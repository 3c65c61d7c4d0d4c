#include "homgain/sim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "homgain/errors.hpp"

namespace homgain {

void SimScenario::validate() const {
  if (!(periods >= 1.0)) throw ConfigError("scenario: periods must be >= 1");
  if (!(omega0 > 0.0) || !(omega_nu > 0.0)) throw ConfigError("scenario: frequencies must be positive");
  if (!(sample_time > 0.0)) throw ConfigError("scenario: sample time must be positive");
  if (!(dilation > 0.0)) throw ConfigError("scenario: dilation must be positive");
}

double SimScenario::horizon() const {
  return periods * 2.0 * std::numbers::pi / omega0 * std::pow(dilation, -cfg.d());
}

std::size_t SimScenario::steps() const {
  return static_cast<std::size_t>(std::llround(horizon() / sample_time));
}

double SimScenario::nu(double t) const {
  if (!noise) return 0.0;
  const double d = cfg.d();
  return std::pow(dilation, 1.0 - d) * a_nu * std::sin(omega_nu * std::pow(dilation, d) * t);
}

double SimScenario::delta(double t) const {
  if (!disturbance) return 0.0;
  const double d = cfg.d();
  return std::pow(dilation, 1.0 + d) * a0 * omega0 * omega0 *
         std::sin(omega0 * std::pow(dilation, d) * t);
}

namespace {

[[noreturn]] void overflow(std::size_t k, double t) {
  std::ostringstream os;
  os << "simulation diverged at step " << k << " (t = " << t
     << "); reduce the sample time or check the gains";
  throw NumericError(os.str());
}

}  // namespace

ErrorTrajectory integrate_error_dynamics(const SimScenario& scn) {
  scn.validate();
  const auto& cfg = scn.cfg;
  const double d = cfg.d();
  const double kt1 = cfg.k1_tilde();
  const double kt2 = cfg.k2_tilde();
  const double k1 = cfg.k1();
  const double p1 = 1.0 / (1.0 - d);
  const double p2 = (1.0 + d) / (1.0 - d);
  const double tau = scn.sample_time;
  const std::size_t n = scn.steps();

  ErrorTrajectory tr{SampledSignal(2, tau), SampledSignal(1, tau), SampledSignal(2, tau)};
  tr.z.reserve(n);
  tr.y.reserve(n);
  tr.u.reserve(n);

  double z1 = std::pow(scn.dilation, 1.0 - d) * scn.z0[0];
  double z2 = scn.dilation * scn.z0[1];
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * tau;
    const double nu = scn.nu(t);
    const double de = scn.delta(t);
    tr.z.push_back({z1, z2});
    tr.y.push_back({kt1 * z2});
    tr.u.push_back({nu, de});
    const double w = z1 + nu;
    const double dz1 = -kt1 * (signed_power(w, p1) - z2);
    const double dz2 = -kt2 * signed_power(w, p2) + de / k1;
    z1 += tau * dz1;
    z2 += tau * dz2;
    if (!std::isfinite(z1) || !std::isfinite(z2)) overflow(k, t);
  }
  return tr;
}

DifferentiatorTrajectory integrate_differentiator_x(const SimScenario& scn) {
  scn.validate();
  if (scn.dilation != 1.0) throw DomainError("x-coordinate simulation requires dilation = 1");
  const auto& cfg = scn.cfg;
  const double d = cfg.d();
  const double k1 = cfg.k1();
  const double k2 = cfg.k2();
  const double p1 = 1.0 / (1.0 - d);
  const double p2 = (1.0 + d) / (1.0 - d);
  const double tau = scn.sample_time;
  const std::size_t n = scn.steps();
  const double a0 = scn.disturbance ? scn.a0 : 0.0;
  const double w0 = scn.omega0;
  auto f0 = [&](double t) { return a0 * std::sin(w0 * t); };
  auto f0_dot = [&](double t) { return a0 * w0 * std::cos(w0 * t); };

  DifferentiatorTrajectory tr{SampledSignal(2, tau), SampledSignal(1, tau), SampledSignal(2, tau)};
  tr.x.reserve(n);
  tr.h.reserve(n);
  tr.z.reserve(n);

  double x1 = f0(0.0) + scn.z0[0];
  double x2 = f0_dot(0.0) + k1 * scn.z0[1];
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * tau;
    const double measured = f0(t) - scn.nu(t);
    const double h = x2 - f0_dot(t);
    tr.x.push_back({x1, x2});
    tr.h.push_back({h});
    tr.z.push_back({x1 - f0(t), h / k1});
    const double e = x1 - measured;
    const double dx1 = -k1 * signed_power(e, p1) + x2;
    const double dx2 = -k2 * signed_power(e, p2);
    x1 += tau * dx1;
    x2 += tau * dx2;
    if (!std::isfinite(x1) || !std::isfinite(x2)) overflow(k, t);
  }
  return tr;
}

double truncated_L2(const SampledSignal& s) {
  double sum = 0.0;
  for (double v : s.raw()) sum += v * v;
  return std::sqrt(sum * s.sample_time());
}

double truncated_L2h(const SampledSignal& s, std::span<const double> r) {
  if (r.size() != s.dim()) throw DomainError("truncated_L2h: weight/dimension mismatch");
  for (double ri : r) {
    if (!(ri > 0.0)) throw DomainError("truncated_L2h: weights must be positive");
  }
  const std::size_t dim = s.dim();
  const auto& raw = s.raw();
  double sum = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double v = raw[k];
    const double ri = r[k % dim];
    if (v == 0.0) continue;
    sum += ri == 1.0 ? v * v : std::pow(std::abs(v), 2.0 / ri);
  }
  return std::sqrt(sum * s.sample_time());
}

namespace {

std::pair<double, double> quotients(const SimScenario& scn) {
  const auto tr = integrate_error_dynamics(scn);
  const WeightSystem ws = scn.cfg.weights();
  const double ry[1] = {ws.output};
  const double gT = truncated_L2(tr.y) / truncated_L2(tr.u);
  const double ghT = truncated_L2h(tr.y, ry) / truncated_L2h(tr.u, ws.input);
  return {gT, ghT};
}

}  // namespace

QuotientReport quotient_experiment(const SimScenario& scn, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("quotient_experiment: kappa must be positive");
  QuotientReport rep;
  rep.kappa = kappa;
  std::tie(rep.gamma_T, rep.gamma_hT) = quotients(scn);
  if (kappa == 1.0 && scn.dilation == 1.0) {
    rep.gamma_T_dilated = rep.gamma_T;
    rep.gamma_hT_dilated = rep.gamma_hT;
    return rep;
  }
  SimScenario dilated = scn;
  dilated.dilation = scn.dilation * kappa;
  std::tie(rep.gamma_T_dilated, rep.gamma_hT_dilated) = quotients(dilated);
  return rep;
}

std::vector<RatioRow> analytic_ratio_curves(double d, std::span<const double> kappas) {
  std::vector<RatioRow> out;
  out.reserve(kappas.size());
  for (double k : kappas) {
    if (!(k > 0.0)) throw DomainError("analytic_ratio_curves: kappa must be positive");
    out.push_back({k, std::pow(k, d), std::pow(k, -d), 1.0});
  }
  return out;
}

}  // namespace homgain
