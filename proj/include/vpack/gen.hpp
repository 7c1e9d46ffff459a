#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "vpack/core.hpp"
#include "vpack/threedim.hpp"

namespace vpack {

// Instance families for tests and benchmarks. All weights land in
// (0, rho_max] except where a class is degenerate by design (the *_only
// classes zero one dimension, anticorrelated's light weight may reach 0).
enum class Dist {
  uniform,         // both weights i.i.d. uniform on (0, rho_max]
  anticorrelated,  // one weight near rho_max, the other near rho_max * u^2
  correlated,      // both weights equal up to +-10% jitter; some exact ties
  s_only,          // l = 0: everything s-heavy
  l_only,          // s = 0: everything l-heavy
};

bool dist_from_string(std::string_view name, Dist& out);
std::string_view to_string(Dist dist);

// Deterministic for a given (n, seed, rho_max, dist); the third weight of
// the 3-D variant is uniform on (0, rho_max] for every family.
std::vector<Item> generate_items(std::size_t n, std::uint64_t seed,
                                 double rho_max, Dist dist);
std::vector<Item3> generate_items3(std::size_t n, std::uint64_t seed,
                                   double rho_max, Dist dist);

}  // namespace vpack
