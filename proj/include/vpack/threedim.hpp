#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vpack/core.hpp"
#include "vpack/pack.hpp"

namespace vpack {

struct Item3 {
  double s = 0.0;
  double l = 0.0;
  double t = 0.0;
};

// rho covers all three weights.
struct Instance3 {
  std::vector<Item3> items;
  double rho = 0.0;
};

Instance3 make_instance3(std::vector<Item3> items,
                         std::optional<double> rho_override = std::nullopt);

struct TriBinSums {
  double s_sum = 0.0;
  double l_sum = 0.0;
  double t_sum = 0.0;
};

struct TriReport {
  bool feasible = true;
  std::vector<TriBinSums> per_bin;
};

// Feasibility check in all three dimensions; throws on malformed packings.
TriReport verify3(const Instance3& instance, const Packing& packing);

// Two-stage 3-D extension: run the 2-D packer on the (s, l) projection, then
// split each resulting bin by next-fit on the third weight. Sub-bins stay
// contiguous, so the permutation is unchanged and only boundaries are
// refined. Metrics aggregate both stages.
std::pair<Packing, Metrics> pack3(const Instance3& instance,
                                  const PackOptions& options = {});

}  // namespace vpack
