#include <cmath>
#include <vector>

#include "doctest.h"
#include "homgain/errors.hpp"
#include "homgain/linear_baseline.hpp"
#include "homgain/tuner.hpp"

using namespace homgain;
using doctest::Approx;

namespace {

const double kA1 = 3.0;
const double kA2 = 1.5 * std::sqrt(3.0);

const DifferentiatorConfig& table1() {
  static const auto cfg = DifferentiatorConfig::with_margin(kA1, kA2, 1.0, -0.5, 1.0);
  return cfg;
}

const OptimalScaling& table1_optimum() {
  static const auto o = optimize_L(table1(), 0.3, 2.0);
  return o;
}

SweepOptions quick() {
  SweepOptions o;
  o.gain.grid.polar = 128;
  o.gain.grid.azimuth = 256;
  o.gain.grid.starts = 8;
  o.gain.tol = 1e-2;
  return o;
}

}  // namespace

TEST_CASE("log spacing") {
  const auto v = log_spaced(0.3, 2.0, 17);
  REQUIRE(v.size() == 17);
  CHECK(v.front() == 0.3);
  CHECK(v.back() == 2.0);
  for (std::size_t i = 2; i < v.size(); ++i) {
    CHECK(v[i] / v[i - 1] == Approx(v[1] / v[0]));
  }
  CHECK(log_spaced(1, 2, 0).empty());
  CHECK(log_spaced(1.5, 2, 1) == std::vector<double>{1.5});
}

TEST_CASE("slope sign changes") {
  CHECK(slope_sign_changes(std::vector<double>{}) == 0);
  CHECK(slope_sign_changes(std::vector<double>{3, 2, 1, 2, 3}) == 1);
  CHECK(slope_sign_changes(std::vector<double>{1, 2, 2, 3}) == 0);
  CHECK(slope_sign_changes(std::vector<double>{3, 1, 2, 1, 2}) == 3);
}

TEST_CASE("degenerate range") {
  const auto o = optimize_L(table1(), 1.0, 1.0);
  CHECK(o.L_star == 1.0);
  CHECK(o.evaluations == 1);
  CHECK(o.gamma_star == estimate_gamma(table1().with_scaling(1.0)).gamma_hat);
  CHECK_THROWS_AS(optimize_L(table1(), 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(optimize_L(table1(), 2.0, 1.0), ConfigError);
}

TEST_CASE("optimum is the best evaluated point") {
  const auto& o = table1_optimum();
  CHECK(o.evaluations == static_cast<int>(o.evaluated.size()));
  for (const auto& [L, g] : o.evaluated) CHECK(o.gamma_star <= g);
  CHECK_FALSE(o.boundary);
  CHECK_FALSE(o.multimodal);
  CHECK(o.L_lo <= o.L_star * (1 + 1e-2));
  CHECK(o.L_hi >= o.L_star * (1 - 1e-2));
  CHECK((o.L_hi - o.L_lo) / o.L_star <= 2e-2);
}

TEST_CASE("gain curve is U-shaped on the coarse grid") {
  const auto& o = table1_optimum();
  std::vector<double> coarse;
  for (std::size_t i = 0; i < 17; ++i) coarse.push_back(o.evaluated[i].second);
  CHECK(slope_sign_changes(coarse) == 1);
  CHECK(coarse.front() > o.gamma_star);
  CHECK(coarse.back() > o.gamma_star);
}

TEST_CASE("channel crossing brackets the optimum") {
  const auto& o = table1_optimum();
  const auto c = table1();
  const double gn = estimate_gamma_noise_only(c).gamma_hat;  // at L = 1
  const double gd = estimate_gamma_dist_only(c).gamma_hat;
  const double p = (1 - c.d()) / (1 + c.d());
  // gn L = gd L^-p
  const double crossing = std::pow(gd / gn, 1.0 / (1.0 + p));
  const double floor_at_crossing = gn * crossing;
  CHECK(o.gamma_star >= std::max(gn * o.L_star, gd * std::pow(o.L_star, -p)) * (1 - 1e-3));
  CHECK(o.gamma_star >= floor_at_crossing * (1 - 1e-3));
  // L* lies on the side of the crossing where the dominating channel bound is within the gain
  CHECK(gn * o.L_star <= o.gamma_star * (1 + 1e-3));
  CHECK(gd * std::pow(o.L_star, -p) <= o.gamma_star * (1 + 1e-3));
}

TEST_CASE("boundary minimum is flagged") {
  const auto o = optimize_L(table1(), 0.3, 0.6, TunerOptions{9, 1e-2, {}});
  CHECK(o.boundary);
}

TEST_CASE("optimum is reproducible across grid seeds") {
  TunerOptions a, b;
  a.gain.grid.seed = 5;
  b.gain.grid.seed = 17;
  const auto oa = optimize_L(table1(), 0.3, 2.0, a);
  const auto ob = optimize_L(table1(), 0.3, 2.0, b);
  CHECK(std::abs(oa.L_star - ob.L_star) / oa.L_star < 2e-2);
  CHECK(std::abs(oa.gamma_star - ob.gamma_star) / oa.gamma_star < 2e-3);
}

TEST_CASE("sweep: empty L list") {
  const std::vector<double> ds{0.0, -0.5}, Ls{};
  CHECK(sweep(kA1, kA2, 1.0, 1.0, ds, Ls, true, quick()).rows.empty());
}

TEST_CASE("sweep: ordering, baseline and scaling laws") {
  const std::vector<double> ds{-0.5, 0.0};
  const std::vector<double> Ls{2.0, 0.5, 1.0};
  const auto t = sweep(kA1, kA2, 1.0, 1.0, ds, Ls, true, quick());
  REQUIRE(t.rows.size() == 6);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const auto& a = t.rows[i - 1];
    const auto& b = t.rows[i];
    CHECK((a.d < b.d || (a.d == b.d && a.L < b.L)));
  }
  for (const auto& r : t.rows) {
    CHECK(r.error.empty());
    CHECK(r.hinf.has_value() == (r.d == 0.0));
    if (r.hinf) CHECK(*r.hinf <= r.gamma_hat);
    CHECK(std::max(r.gamma_noise, r.gamma_dist) <= r.gamma_hat * (1 + 1e-2));
  }
  // rows 0..2 are d = -0.5 at L = 0.5, 1, 2
  CHECK(t.rows[1].gamma_noise / t.rows[0].gamma_noise == Approx(2.0).epsilon(2e-2));
  CHECK(t.rows[2].gamma_dist / t.rows[1].gamma_dist == Approx(std::pow(2.0, -3.0)).epsilon(2e-2));
}

TEST_CASE("sweep: assumption failures become error rows") {
  const std::vector<double> ds{-0.5};
  const std::vector<double> Ls{0.5, 1.0};
  const auto t = sweep(kA1, 100.0, 1.0, 1.0, ds, Ls, false, quick());
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) {
    CHECK(r.error == "assumption1");
    CHECK(std::isnan(r.gamma_hat));
  }
}

TEST_CASE("sweep: invalid arguments") {
  const std::vector<double> bad_d{1.0}, ok_L{1.0}, ok_d{0.0}, bad_L{-1.0};
  CHECK_THROWS_AS(sweep(kA1, kA2, 1.0, 1.0, bad_d, ok_L, false, quick()), ConfigError);
  CHECK_THROWS_AS(sweep(kA1, kA2, 1.0, 1.0, ok_d, bad_L, false, quick()), ConfigError);
}

TEST_CASE("sweep: column minimum near the optimum") {
  const std::vector<double> ds{-0.5};
  const auto Ls = log_spaced(0.3, 2.0, 17);
  SweepOptions o;
  const auto t = sweep(kA1, kA2, 1.0, 1.0, ds, Ls, false, o);
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (t.rows[i].gamma_hat < t.rows[best].gamma_hat) best = i;
  }
  const auto& opt = table1_optimum();
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < Ls.size(); ++i) {
    if (std::abs(std::log(Ls[i] / opt.L_star)) < std::abs(std::log(Ls[nearest] / opt.L_star))) nearest = i;
  }
  CHECK(std::max(best, nearest) - std::min(best, nearest) <= 1);
}
