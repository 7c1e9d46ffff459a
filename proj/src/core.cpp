#include "vpack/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vpack {

namespace {

std::string pos_str(std::size_t index_0based) {
  return std::to_string(index_0based + 1);
}

double checked_rho(double derived, std::optional<double> rho_override) {
  if (!rho_override) return derived;
  if (*rho_override < derived - 1e-15 || *rho_override > 1.0) {
    throw Error(errc::rho_override_too_small,
                "rho override " + std::to_string(*rho_override) +
                    " must lie in [max weight, 1] = [" +
                    std::to_string(derived) + ", 1]");
  }
  return std::max(*rho_override, derived);
}

}  // namespace

Instance make_instance(std::vector<Item> items,
                       std::optional<double> rho_override) {
  double max_weight = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& it = items[i];
    if (!(it.s >= 0.0) || !(it.l >= 0.0)) {
      throw Error(errc::negative_weight,
                  "item " + pos_str(i) + " has a negative or non-finite weight");
    }
    if (it.s > 1.0 || it.l > 1.0) {
      throw Error(errc::item_exceeds_capacity,
                  "item " + pos_str(i) + " exceeds unit capacity in the " +
                      (it.s > 1.0 ? "s" : "l") + " dimension");
    }
    max_weight = std::max(max_weight, std::max(it.s, it.l));
  }
  Instance instance;
  instance.items = std::move(items);
  instance.rho = checked_rho(max_weight, rho_override);
  return instance;
}

Instance normalize(const RawInstance& raw, std::optional<double> rho_override) {
  if (!(raw.cap_s > 0.0) || !(raw.cap_l > 0.0)) {
    throw Error(errc::non_positive_capacity, "bin capacities must be positive");
  }
  std::vector<Item> items;
  items.reserve(raw.items.size());
  for (std::size_t i = 0; i < raw.items.size(); ++i) {
    const RawItem& it = raw.items[i];
    if (!(it.size >= 0.0) || !(it.load >= 0.0)) {
      throw Error(errc::negative_weight,
                  "item " + pos_str(i) + " has a negative or non-finite weight");
    }
    if (it.size > raw.cap_s) {
      throw Error(errc::item_exceeds_capacity,
                  "item " + pos_str(i) + " exceeds the size capacity");
    }
    if (it.load > raw.cap_l) {
      throw Error(errc::item_exceeds_capacity,
                  "item " + pos_str(i) + " exceeds the load capacity");
    }
    items.push_back({it.size / raw.cap_s, it.load / raw.cap_l});
  }
  return make_instance(std::move(items), rho_override);
}

std::vector<std::vector<std::size_t>> Packing::bins() const {
  std::vector<std::vector<std::size_t>> result;
  result.reserve(bin_count());
  for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
    result.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(boundaries[b]),
                        order.begin() + static_cast<std::ptrdiff_t>(boundaries[b + 1]));
  }
  return result;
}

std::string_view to_string(CaseClass c) {
  switch (c) {
    case CaseClass::all_complete: return "all-complete";
    case CaseClass::all_s_complete: return "all-s-complete";
    case CaseClass::all_l_complete: return "all-l-complete";
    case CaseClass::violation: return "violation";
  }
  return "violation";
}

void validate_packing_shape(std::size_t n, const Packing& packing) {
  const auto& d = packing.boundaries;
  if (d.empty() || d.front() != 0 || d.back() != n) {
    throw Error(errc::malformed_boundaries,
                "boundaries must start at the first position and end one past "
                "the last");
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] >= d[i + 1]) {
      throw Error(errc::malformed_boundaries,
                  "boundaries must be strictly increasing (bin " +
                      pos_str(i) + " is empty or overlaps)");
    }
  }
  if (packing.order.size() != n) {
    throw Error(errc::not_a_permutation,
                "order has " + std::to_string(packing.order.size()) +
                    " entries for " + std::to_string(n) + " items");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t idx : packing.order) {
    if (idx >= n || seen[idx]) {
      throw Error(errc::not_a_permutation,
                  "order is not a permutation of the item indices");
    }
    seen[idx] = true;
  }
}

VerificationReport verify(const Instance& instance, const Packing& packing,
                          std::optional<int> reference_bins) {
  const std::size_t n = instance.items.size();
  validate_packing_shape(n, packing);

  VerificationReport report;
  const double threshold = 1.0 - instance.rho - kEps;
  const std::size_t q = packing.bin_count();
  report.per_bin.reserve(q);
  for (std::size_t b = 0; b < q; ++b) {
    BinCheck check;
    for (std::size_t p = packing.boundaries[b]; p < packing.boundaries[b + 1]; ++p) {
      const Item& it = instance.items[packing.order[p]];
      check.s_sum += it.s;
      check.l_sum += it.l;
    }
    const bool s_fits = check.s_sum <= 1.0 + kEps;
    const bool l_fits = check.l_sum <= 1.0 + kEps;
    check.s_complete = s_fits && check.s_sum >= threshold;
    check.l_complete = l_fits && check.l_sum >= threshold;
    check.complete = check.s_complete && check.l_complete;
    if (!s_fits || !l_fits) report.feasible = false;
    report.per_bin.push_back(check);
  }

  // Classify over all bins except the last; a complete bin is also s- and
  // l-complete, so the first matching class is the unique one.
  bool all_c = true;
  bool all_s = true;
  bool all_l = true;
  for (std::size_t b = 0; b + 1 < q; ++b) {
    all_c = all_c && report.per_bin[b].complete;
    all_s = all_s && report.per_bin[b].s_complete;
    all_l = all_l && report.per_bin[b].l_complete;
  }
  if (all_c) report.case_class = CaseClass::all_complete;
  else if (all_s) report.case_class = CaseClass::all_s_complete;
  else if (all_l) report.case_class = CaseClass::all_l_complete;
  else report.case_class = CaseClass::violation;

  if (reference_bins && instance.rho < 1.0) {
    const double bound =
        static_cast<double>(*reference_bins) / (1.0 - instance.rho) + 1.0;
    report.bound_ok = static_cast<double>(q) <= bound + kEps;
  }
  return report;
}

}  // namespace vpack
