#include "homgain/search.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace homgain {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HOMGAIN_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace search {

double grid_offset(std::uint64_t seed, unsigned axis) {
  if (seed == 0) return 0.5;
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + axis);
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace search
}  // namespace homgain
