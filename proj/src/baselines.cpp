#include "vpack/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace vpack {

namespace {

// First fit over an explicit visit order; returns original ids per bin.
std::vector<std::vector<std::size_t>> first_fit_bins(
    const std::vector<Item>& items, const std::vector<std::size_t>& visit) {
  struct Bin {
    double s = 0.0;
    double l = 0.0;
    std::vector<std::size_t> members;
  };
  std::vector<Bin> bins;
  for (std::size_t idx : visit) {
    const Item& it = items[idx];
    bool placed = false;
    for (Bin& bin : bins) {
      if (bin.s + it.s <= 1.0 + kEps && bin.l + it.l <= 1.0 + kEps) {
        bin.s += it.s;
        bin.l += it.l;
        bin.members.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) {
      bins.push_back({it.s, it.l, {idx}});
    }
  }
  std::vector<std::vector<std::size_t>> result;
  result.reserve(bins.size());
  for (Bin& bin : bins) result.push_back(std::move(bin.members));
  return result;
}

Packing packing_from_bins(std::vector<std::vector<std::size_t>> bins) {
  Packing packing;
  packing.boundaries.push_back(0);
  for (auto& bin : bins) {
    packing.order.insert(packing.order.end(), bin.begin(), bin.end());
    packing.boundaries.push_back(packing.order.size());
  }
  return packing;
}

}  // namespace

Packing pack_reference(const Instance& instance) {
  const std::size_t n = instance.items.size();
  Packing packing;
  packing.boundaries.push_back(0);
  if (n == 0) return packing;

  // Same working-array semantics as the linear engine, realized with fresh
  // scans from the frontier each step instead of carried cursors, and a
  // per-bin add history instead of last-seat bookkeeping. Sums accumulate in
  // the same order as the engine so floating-point decisions coincide.
  std::vector<Item> a = instance.items;
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  const double threshold = 1.0 - instance.rho - kEps;

  double s_sum = 0.0;
  double l_sum = 0.0;
  std::size_t frontier = 0;
  std::vector<std::size_t> history;  // seats added to the current bin, in order

  auto scan_first = [&](bool s_class) -> std::size_t {
    for (std::size_t p = frontier; p < n; ++p) {
      if (s_class ? is_s_heavy(a[p]) : is_l_heavy(a[p])) return p;
    }
    return n;
  };
  auto last_of_class = [&](bool s_class) -> std::size_t {
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
      if (s_class ? is_s_heavy(a[*it]) : is_l_heavy(a[*it])) return *it;
    }
    return n;
  };
  auto seed = [&](std::size_t seat) {
    s_sum = a[seat].s;
    l_sum = a[seat].l;
    history.assign(1, seat);
    frontier = seat + 1;
  };
  auto close_while_complete = [&]() {
    while (s_sum >= threshold && l_sum >= threshold && frontier < n) {
      packing.boundaries.push_back(frontier);
      seed(frontier);
    }
  };

  seed(0);
  close_while_complete();
  while (frontier < n) {
    const std::size_t pos_s = scan_first(true);
    const std::size_t pos_l = scan_first(false);
    const bool want_l = s_sum >= l_sum;
    const std::size_t p = want_l ? (pos_l < n ? pos_l : pos_s)
                                 : (pos_s < n ? pos_s : pos_l);
    const bool incoming_l = is_l_heavy(a[p]);

    const double s_new = s_sum + a[p].s;
    const double l_new = l_sum + a[p].l;
    const bool s_dim = s_sum >= l_sum;
    if ((s_dim ? s_new : l_new) > 1.0 + kEps) {
      if (incoming_l == s_dim) {
        const std::size_t victim = last_of_class(s_dim);
        if (victim == n) {
          throw Error(errc::internal_invariant,
                      "overflow ejection without a victim in the current bin");
        }
        const Item incoming = a[p];
        std::swap(a[p], a[victim]);
        std::swap(ids[p], ids[victim]);
        s_sum += incoming.s;
        l_sum += incoming.l;
        s_sum -= a[p].s;
        l_sum -= a[p].l;
        // The bin is complete now and closes below; no history upkeep needed.
      } else {
        packing.boundaries.push_back(frontier);
        seed(p);
      }
    } else {
      s_sum = s_new;
      l_sum = l_new;
      if (p != frontier) {
        std::swap(a[p], a[frontier]);
        std::swap(ids[p], ids[frontier]);
      }
      history.push_back(frontier);
      ++frontier;
    }
    close_while_complete();
  }
  packing.boundaries.push_back(n);
  packing.order = std::move(ids);
  return packing;
}

Packing pack_first_fit(const Instance& instance) {
  std::vector<std::size_t> visit(instance.items.size());
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  return packing_from_bins(first_fit_bins(instance.items, visit));
}

Packing pack_ffd(const Instance& instance) {
  std::vector<std::size_t> visit(instance.items.size());
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  std::stable_sort(visit.begin(), visit.end(),
                   [&](std::size_t i, std::size_t j) {
                     return std::max(instance.items[i].s, instance.items[i].l) >
                            std::max(instance.items[j].s, instance.items[j].l);
                   });
  return packing_from_bins(first_fit_bins(instance.items, visit));
}

}  // namespace vpack
