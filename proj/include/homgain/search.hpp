#pragma once

// Search machinery shared by the sphere/circle maximizations and the
// scaling optimizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

namespace homgain {

// Dense grid on the half circle phi in [0, pi) followed by golden-section
// refinement around the best grid point. Points with mu below `mu_floor` are
// excluded from g-maximizations.
struct CircleGrid {
  std::size_t angles = 4096;
  std::uint64_t seed = 0;
  double mu_floor = 1e-14;
  int threads = 1;
};

// Dense (phi1, phi2) grid over the half sphere phi1 in [0, pi], phi2 in
// [0, pi), then Nelder-Mead from the best `starts` grid local maxima.
struct SphereGrid {
  std::size_t polar = 512;
  std::size_t azimuth = 1024;
  std::size_t starts = 16;
  std::uint64_t seed = 0;
  int threads = 1;
};

// 0 means: HOMGAIN_THREADS if set, otherwise hardware concurrency.
int resolve_threads(int requested);

namespace search {

// Fractional grid offset in [0, 1) for a given seed and axis. Seed 0 gives
// cell centres (0.5); other seeds give a reproducible pseudo-random shift.
double grid_offset(std::uint64_t seed, unsigned axis);

// Runs fn(begin, end) over contiguous chunks of [0, n).
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

struct Max1 {
  double value = -std::numeric_limits<double>::infinity();
  double arg = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
};

template <class F>
Max1 golden_section_max(F&& f, double a, double b, double tol = 1e-12, int max_iter = 200) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && std::abs(b - a) > tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? Max1{fc, c, a, b} : Max1{fd, d, a, b};
}

// Same as golden_section_max but minimizing.
template <class F>
Max1 golden_section_min(F&& f, double a, double b, double tol, int max_iter = 200) {
  auto r = golden_section_max([&](double x) { return -f(x); }, a, b, tol, max_iter);
  r.value = -r.value;
  return r;
}

struct Max2 {
  double value = -std::numeric_limits<double>::infinity();
  double x = 0.0;
  double y = 0.0;
  int evaluations = 0;
};

// Nelder-Mead maximization in two variables.
template <class F>
Max2 nelder_mead_max(F&& f, double x0, double y0, double step, double xtol = 1e-10,
                     int max_evals = 400) {
  struct P {
    double x, y, v;
  };
  int evals = 0;
  auto eval = [&](double x, double y) {
    ++evals;
    return P{x, y, f(x, y)};
  };
  P s[3] = {eval(x0, y0), eval(x0 + step, y0), eval(x0, y0 + step)};
  auto by_value = [](const P& a, const P& b) { return a.v > b.v; };
  while (evals < max_evals) {
    std::sort(std::begin(s), std::end(s), by_value);
    const double size = std::max({std::abs(s[1].x - s[0].x), std::abs(s[1].y - s[0].y),
                                  std::abs(s[2].x - s[0].x), std::abs(s[2].y - s[0].y)});
    if (size < xtol) break;
    const double cx = 0.5 * (s[0].x + s[1].x);
    const double cy = 0.5 * (s[0].y + s[1].y);
    const P r = eval(cx + (cx - s[2].x), cy + (cy - s[2].y));
    if (r.v > s[0].v) {
      const P e = eval(cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y));
      s[2] = e.v > r.v ? e : r;
    } else if (r.v > s[1].v) {
      s[2] = r;
    } else {
      const bool outside = r.v > s[2].v;
      const P& ref = outside ? r : s[2];
      const P c = eval(cx + 0.5 * (ref.x - cx), cy + 0.5 * (ref.y - cy));
      if (c.v > ref.v) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i) s[i] = eval(0.5 * (s[0].x + s[i].x), 0.5 * (s[0].y + s[i].y));
      }
    }
  }
  std::sort(std::begin(s), std::end(s), by_value);
  return {s[0].v, s[0].x, s[0].y, evals};
}

// Maximizes f(phi) over the half circle [0, pi) (caller guarantees
// f(phi + pi) == f(phi)). Non-finite values are treated as excluded.
template <class F>
Max1 maximize_half_circle(F&& f, const CircleGrid& grid) {
  const std::size_t n = std::max<std::size_t>(grid.angles, 8);
  const double h = std::numbers::pi / static_cast<double>(n);
  const double off = grid_offset(grid.seed, 0);
  std::vector<double> vals(n);
  parallel_for(n, resolve_threads(grid.threads), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) vals[i] = f((static_cast<double>(i) + off) * h);
  });
  std::size_t best = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(vals[i])) continue;
    if (best == n || vals[i] > vals[best]) best = i;
  }
  if (best == n) return {};
  const double phi = (static_cast<double>(best) + off) * h;
  auto guarded = [&](double p) {
    const double v = f(p);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  Max1 refined = golden_section_max(guarded, phi - h, phi + h, 1e-13);
  Max1 result{vals[best], phi, phi - h, phi + h};
  if (refined.value > result.value) result = refined;
  // Report the angle in [0, pi).
  result.arg = std::fmod(result.arg, std::numbers::pi);
  if (result.arg < 0.0) result.arg += std::numbers::pi;
  return result;
}

}  // namespace search
}  // namespace homgain
