#include <cmath>
#include <numbers>

#include "doctest.h"
#include "homgain/errors.hpp"
#include "homgain/gain.hpp"
#include "homgain/storage.hpp"
#include "oracles.hpp"

using namespace homgain;
using doctest::Approx;

namespace {
const double kA1 = 3.0;
const double kA2 = 1.5 * std::sqrt(3.0);
const LyapunovParams kP{-0.5, 1.0};
}  // namespace

TEST_CASE("storage ratio examples") {
  CHECK(storage_ratio({1, 0}, kA1, kA2, kP) == 0.0);
  CHECK(storage_ratio({-2.5, 0}, kA1, kA2, kP) == 0.0);
  const Vec2 z{0.3, -0.8};
  const double ref = kA1 * kA1 * z[1] * z[1] /
                     (kA1 * oracle::mu(z[0], z[1], -0.5) - kA2 / kA1 * oracle::eta(z[0], z[1], -0.5, 1.0));
  CHECK(storage_ratio(z, kA1, kA2, kP) == Approx(ref).epsilon(1e-12));
}

TEST_CASE("storage ratio is degree zero") {
  for (int i = 0; i < 500; ++i) {
    const Vec2 z{oracle::uniform(-2, 2), oracle::uniform(-2, 2)};
    const double kappa = std::exp(oracle::uniform(-2, 2));
    const Vec2 zk{std::pow(kappa, 1.5) * z[0], kappa * z[1]};
    CHECK(storage_ratio(zk, kA1, kA2, kP) == Approx(storage_ratio(z, kA1, kA2, kP)).epsilon(1e-9));
  }
}

TEST_CASE("non-positive denominator is a numeric error") {
  // alpha2 = 100 violates the gain condition somewhere on the circle
  bool threw = false;
  for (int i = 0; i < 512 && !threw; ++i) {
    const auto s = sphere_param2(std::numbers::pi * (i + 0.5) / 512, {1.5, 1});
    try {
      storage_ratio({s.z1, s.z2}, kA1, 100.0, kP);
    } catch (const NumericError&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("storage scale") {
  const auto s = compute_storage_scale(kA1, kA2, kP);
  CHECK(s.M > 0);
  CHECK(s.margin == 1.0);
  CHECK(s.a_tilde == Approx(s.M + 1.0));

  const auto s2 = compute_storage_scale(kA1, kA2, kP, 2.5);
  CHECK(s2.M == s.M);
  CHECK(s2.a_tilde == Approx(s.M + 2.5));

  const auto lin = compute_storage_scale(kA1, kA2, {0.0, 1.0});
  CHECK(lin.M > 0);

  CHECK_THROWS_AS(compute_storage_scale(kA1, kA2, kP, 0.0), ConfigError);
  try {
    compute_storage_scale(kA1, 100.0, kP);
    FAIL("expected an assumption violation");
  } catch (const AssumptionError& e) {
    CHECK(std::string(e.reason()) == "assumption1");
  }
}

TEST_CASE("storage scale does not depend on L") {
  const auto a = DifferentiatorConfig::with_margin(kA1, kA2, 1.0, -0.5, 0.5);
  const auto b = DifferentiatorConfig::with_margin(kA1, kA2, 1.0, -0.5, 2.0);
  CHECK(a.storage_max() == b.storage_max());
  CHECK(a.with_scaling(4.0).storage_max() == a.storage_max());
}

TEST_CASE("storage inequality with zero input") {
  const auto s = compute_storage_scale(kA1, kA2, kP);
  int bad = 0;
  for (int i = 0; i < 8192; ++i) {
    const auto p = sphere_param2(2 * std::numbers::pi * (i + 0.5) / 8192, {1.5, 1});
    const double z1 = p.z1, z2 = p.z2;
    const double v = -s.a_tilde * (kA1 * oracle::mu(z1, z2, -0.5) - kA2 / kA1 * oracle::eta(z1, z2, -0.5, 1.0)) +
                     kA1 * kA1 * z2 * z2;
    if (!(v < 0)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("storage scale is stable across grid seeds") {
  CircleGrid g1, g2;
  g1.seed = 1;
  g2.seed = 99;
  const auto a = compute_storage_scale(kA1, kA2, kP, 1.0, g1);
  const auto b = compute_storage_scale(kA1, kA2, kP, 1.0, g2);
  CHECK(std::abs(a.M - b.M) / a.M < 1e-3);
}
