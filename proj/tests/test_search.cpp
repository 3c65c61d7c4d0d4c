#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "homgain/search.hpp"

using namespace homgain;
using doctest::Approx;

TEST_CASE("golden section finds a parabola vertex") {
  const auto r = search::golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, -2, 2, 1e-10);
  CHECK(r.arg == Approx(0.3).epsilon(1e-8));
  CHECK(r.lo <= r.arg);
  CHECK(r.hi >= r.arg);
  CHECK(r.hi - r.lo < 1e-9);
  const auto m = search::golden_section_min([](double x) { return std::cosh(x - 1.0); }, -3, 3, 1e-10);
  CHECK(m.arg == Approx(1.0).epsilon(1e-7));
  CHECK(m.value == Approx(1.0));
}

TEST_CASE("nelder mead on a smooth peak") {
  auto f = [](double x, double y) { return -std::pow(x - 1.0, 2) - 3 * std::pow(y + 0.5, 2) + 0.5 * x * y; };
  const auto r = search::nelder_mead_max(f, 0.0, 0.0, 0.2, 1e-10, 2000);
  // stationary point: 2x - y/2 = 2, -x/2 + 6y = -3
  const double det = 2 * 6 - 0.25;
  const double xs = (2 * 6 - 0.5 * 3) / det;
  const double ys = (2 * -3 + 0.5 * 2) / det;
  CHECK(r.x == Approx(xs).epsilon(1e-6));
  CHECK(r.y == Approx(ys).epsilon(1e-6));
}

TEST_CASE("half circle maximization") {
  CircleGrid g;
  g.angles = 256;
  const auto r = search::maximize_half_circle([](double p) { return std::cos(2 * (p - 2.5)); }, g);
  CHECK(r.arg == Approx(2.5).epsilon(1e-8));
  CHECK(r.value == Approx(1.0).epsilon(1e-12));

  // excluded points never win
  const auto e = search::maximize_half_circle(
      [](double p) { return p < 1.0 ? std::nan("") : -p; }, g);
  CHECK(e.arg >= 1.0);
  CHECK(e.value == Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("grid offsets") {
  CHECK(search::grid_offset(0, 0) == 0.5);
  CHECK(search::grid_offset(0, 1) == 0.5);
  const double a = search::grid_offset(7, 0);
  CHECK(a >= 0.0);
  CHECK(a < 1.0);
  CHECK(a == search::grid_offset(7, 0));
  CHECK(a != search::grid_offset(7, 1));
}

TEST_CASE("parallel_for covers the range once") {
  for (int threads : {1, 3, 8}) {
    std::vector<int> hits(101, 0);
    search::parallel_for(hits.size(), threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3) == 3);
  setenv("HOMGAIN_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  unsetenv("HOMGAIN_THREADS");
  CHECK(resolve_threads(0) >= 1);
}
