#include "homgain/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace homgain {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

namespace {

// nlohmann serializes non-finite doubles as null.
nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "d,L,gamma_hat,gamma_noise,gamma_dist,hinf\n";
  for (const auto& r : table.rows) {
    os << format_number(r.d) << ',' << format_number(r.L) << ',';
    if (r.error.empty()) {
      os << format_number(r.gamma_hat);
    } else {
      os << "error:" << r.error;
    }
    os << ',' << format_number(r.gamma_noise) << ',' << format_number(r.gamma_dist) << ',';
    if (r.hinf) os << format_number(*r.hinf);
    os << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const ErrorTrajectory& tr, std::size_t stride) {
  if (stride == 0) stride = 1;
  os << "t,z1,z2,y,nu,delta\n";
  for (std::size_t k = 0; k < tr.z.size(); k += stride) {
    os << format_number(tr.z.time(k)) << ',' << format_number(tr.z(k, 0)) << ','
       << format_number(tr.z(k, 1)) << ',' << format_number(tr.y(k, 0)) << ','
       << format_number(tr.u(k, 0)) << ',' << format_number(tr.u(k, 1)) << '\n';
  }
}

void write_ratios_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
  os << "kappa,ratio_nu,ratio_delta,ratio_hom\n";
  for (const auto& r : rows) {
    os << format_number(r.kappa) << ',' << format_number(r.ratio_nu) << ','
       << format_number(r.ratio_delta) << ',' << format_number(r.ratio_hom) << '\n';
  }
}

nlohmann::json to_json(const GainRatioCheck& c) {
  return {{"g_max", num(c.g_max)},
          {"bound", num(c.bound)},
          {"satisfied", c.satisfied},
          {"argmax_phi", num(c.argmax_phi)}};
}

nlohmann::json to_json(const StorageScale& s) {
  return {{"M", num(s.M)},
          {"a_tilde", num(s.a_tilde)},
          {"margin", num(s.margin)},
          {"argmax_phi", num(s.argmax_phi)}};
}

nlohmann::json to_json(const GainEstimate& g) {
  return {{"gamma_hat", num(g.gamma_hat)}, {"J_max", num(g.J_max)},
          {"phi1", num(g.phi1)},           {"phi2", num(g.phi2)},
          {"gamma_lo", num(g.gamma_lo)},   {"gamma_hi", num(g.gamma_hi)},
          {"iterations", g.iterations}};
}

nlohmann::json to_json(const OptimalScaling& o) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [L, g] : o.evaluated) curve.push_back({num(L), num(g)});
  return {{"L_star", num(o.L_star)},   {"gamma_star", num(o.gamma_star)},
          {"L_lo", num(o.L_lo)},       {"L_hi", num(o.L_hi)},
          {"evaluations", o.evaluations}, {"boundary", o.boundary},
          {"multimodal", o.multimodal}, {"evaluated", curve}};
}

nlohmann::json to_json(const QuotientReport& q) {
  return {{"gamma_T", num(q.gamma_T)},
          {"gamma_hT", num(q.gamma_hT)},
          {"kappa", num(q.kappa)},
          {"gamma_T_dilated", num(q.gamma_T_dilated)},
          {"gamma_hT_dilated", num(q.gamma_hT_dilated)}};
}

nlohmann::json to_json(const DifferentiatorConfig& c) {
  return {{"alpha1", c.alpha1()}, {"alpha2", c.alpha2()}, {"beta", c.beta()},
          {"d", c.d()},           {"L", c.L()},           {"a_tilde", c.a_tilde()},
          {"M", c.storage_max()}, {"g_max", c.g_max()},   {"k1", c.k1()},
          {"k2", c.k2()}};
}

}  // namespace homgain
