#include "vpack/threedim.hpp"

#include <algorithm>
#include <string>

namespace vpack {

Instance3 make_instance3(std::vector<Item3> items,
                         std::optional<double> rho_override) {
  double max_weight = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item3& it = items[i];
    if (!(it.s >= 0.0) || !(it.l >= 0.0) || !(it.t >= 0.0)) {
      throw Error(errc::negative_weight,
                  "item " + std::to_string(i + 1) +
                      " has a negative or non-finite weight");
    }
    if (it.s > 1.0 || it.l > 1.0 || it.t > 1.0) {
      throw Error(errc::item_exceeds_capacity,
                  "item " + std::to_string(i + 1) + " exceeds unit capacity");
    }
    max_weight = std::max({max_weight, it.s, it.l, it.t});
  }
  if (rho_override) {
    if (*rho_override < max_weight - 1e-15 || *rho_override > 1.0) {
      throw Error(errc::rho_override_too_small,
                  "rho override must lie in [max weight, 1]");
    }
    max_weight = std::max(*rho_override, max_weight);
  }
  Instance3 instance;
  instance.items = std::move(items);
  instance.rho = max_weight;
  return instance;
}

TriReport verify3(const Instance3& instance, const Packing& packing) {
  validate_packing_shape(instance.items.size(), packing);
  TriReport report;
  report.per_bin.reserve(packing.bin_count());
  for (std::size_t b = 0; b + 1 < packing.boundaries.size(); ++b) {
    TriBinSums sums;
    for (std::size_t p = packing.boundaries[b]; p < packing.boundaries[b + 1]; ++p) {
      const Item3& it = instance.items[packing.order[p]];
      sums.s_sum += it.s;
      sums.l_sum += it.l;
      sums.t_sum += it.t;
    }
    if (sums.s_sum > 1.0 + kEps || sums.l_sum > 1.0 + kEps ||
        sums.t_sum > 1.0 + kEps) {
      report.feasible = false;
    }
    report.per_bin.push_back(sums);
  }
  return report;
}

std::pair<Packing, Metrics> pack3(const Instance3& instance,
                                  const PackOptions& options) {
  // Stage 1 ignores the third weight. Running it with the three-dimensional
  // rho only lowers the completeness threshold, which stays sound.
  Instance projection;
  projection.rho = instance.rho;
  projection.items.reserve(instance.items.size());
  for (const Item3& it : instance.items) projection.items.push_back({it.s, it.l});

  auto [stage1, metrics] = pack(projection, options);

  // Stage 2: next-fit on the third weight inside each bin. Sub-bins are
  // contiguous segments, so the permutation needs no further moves.
  Packing packing;
  packing.order = std::move(stage1.order);
  packing.boundaries.push_back(0);
  for (std::size_t b = 0; b + 1 < stage1.boundaries.size(); ++b) {
    double t_sum = 0.0;
    for (std::size_t p = stage1.boundaries[b]; p < stage1.boundaries[b + 1]; ++p) {
      const double t = instance.items[packing.order[p]].t;
      ++metrics.loop_iterations;
      if (p > stage1.boundaries[b] && t_sum + t > 1.0 + kEps) {
        packing.boundaries.push_back(p);
        t_sum = t;
      } else {
        t_sum += t;
      }
    }
    packing.boundaries.push_back(stage1.boundaries[b + 1]);
  }
  metrics.bins_opened = packing.bin_count();
  return {std::move(packing), metrics};
}

}  // namespace vpack
