#pragma once

#include <cstddef>
#include <vector>

#include "vpack/core.hpp"
#include "vpack/threedim.hpp"

namespace vpack {

inline constexpr int kDefaultOracleLimit = 14;

struct OptResult {
  int bins = 0;
  // Bin index per original item, bins numbered by first occurrence in
  // original index order. Empty for an empty instance.
  std::vector<int> assignment;
};

// Exact minimum bin count by branch and bound over item-to-bin assignments
// with symmetry breaking; deterministic. Throws errc::instance_too_large
// when n exceeds `limit`.
OptResult optimal_bins(const Instance& instance, int limit = kDefaultOracleLimit);
OptResult optimal_bins(const Instance3& instance, int limit = kDefaultOracleLimit);

// ceil(max of per-dimension weight sums); 0 for an empty instance. Always a
// valid lower bound on optimal_bins.
int lower_bound(const Instance& instance);
int lower_bound(const Instance3& instance);

// Materializes a witness assignment as a Packing so it can be fed to verify.
Packing packing_from_assignment(const std::vector<int>& assignment);

}  // namespace vpack
