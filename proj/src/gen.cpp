#include "vpack/gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vpack {

namespace {

// Explicit 53-bit mapping so streams do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double pos_unit() { return 1.0 - unit(); }                                  // (0, 1]
  bool coin() { return (engine_() & 1) != 0; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

Item draw_pair(Rng& rng, double rho_max, Dist dist) {
  switch (dist) {
    case Dist::uniform:
      return {rho_max * rng.pos_unit(), rho_max * rng.pos_unit()};
    case Dist::anticorrelated: {
      const double hi = rho_max * (0.9 + 0.1 * rng.pos_unit());
      const double u = rng.unit();
      const double lo = rho_max * u * u;
      return rng.coin() ? Item{hi, lo} : Item{lo, hi};
    }
    case Dist::correlated: {
      const double base = rho_max * rng.pos_unit();
      if ((rng.bits() & 7) == 0) return {base, base};  // exact tie
      const double jitter = 0.9 + 0.2 * rng.unit();
      return {base, std::min(base * jitter, rho_max)};
    }
    case Dist::s_only:
      return {rho_max * rng.pos_unit(), 0.0};
    case Dist::l_only:
      return {0.0, rho_max * rng.pos_unit()};
  }
  return {};
}

}  // namespace

bool dist_from_string(std::string_view name, Dist& out) {
  if (name == "uniform") out = Dist::uniform;
  else if (name == "anticorrelated") out = Dist::anticorrelated;
  else if (name == "correlated") out = Dist::correlated;
  else if (name == "s-only") out = Dist::s_only;
  else if (name == "l-only") out = Dist::l_only;
  else return false;
  return true;
}

std::string_view to_string(Dist dist) {
  switch (dist) {
    case Dist::uniform: return "uniform";
    case Dist::anticorrelated: return "anticorrelated";
    case Dist::correlated: return "correlated";
    case Dist::s_only: return "s-only";
    case Dist::l_only: return "l-only";
  }
  return "uniform";
}

std::vector<Item> generate_items(std::size_t n, std::uint64_t seed,
                                 double rho_max, Dist dist) {
  Rng rng(seed);
  std::vector<Item> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) items.push_back(draw_pair(rng, rho_max, dist));
  return items;
}

std::vector<Item3> generate_items3(std::size_t n, std::uint64_t seed,
                                   double rho_max, Dist dist) {
  Rng rng(seed);
  std::vector<Item3> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Item pair = draw_pair(rng, rho_max, dist);
    items.push_back({pair.s, pair.l, rho_max * rng.pos_unit()});
  }
  return items;
}

}  // namespace vpack
