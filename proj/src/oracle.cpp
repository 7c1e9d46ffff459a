#include "vpack/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace vpack {

namespace {

using Weights = std::array<double, 3>;

int ceil_bins(double total) {
  // Guard against accumulated sums landing a hair above an integer.
  return total <= 0.0 ? 0 : static_cast<int>(std::ceil(total - kEps));
}

int lower_bound_impl(const std::vector<Weights>& w, int dims) {
  double totals[3] = {0.0, 0.0, 0.0};
  for (const Weights& it : w) {
    for (int d = 0; d < dims; ++d) totals[d] += it[d];
  }
  int best = 0;
  for (int d = 0; d < dims; ++d) best = std::max(best, ceil_bins(totals[d]));
  return best;
}

// Depth-first branch and bound over item-to-bin assignments. Items are
// visited in decreasing max-weight order (first fail); a new bin may only be
// opened right after the highest-index open bin, which breaks bin symmetry.
class Solver {
 public:
  Solver(std::vector<Weights> w, int dims)
      : w_(std::move(w)), dims_(dims), n_(w_.size()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return key(w_[a]) > key(w_[b]);
                     });
    suffix_.assign(n_ + 1, {0.0, 0.0, 0.0});
    for (std::size_t i = n_; i-- > 0;) {
      for (int d = 0; d < dims_; ++d) {
        suffix_[i][d] = suffix_[i + 1][d] + w_[order_[i]][d];
      }
    }
  }

  OptResult solve() {
    OptResult result;
    if (n_ == 0) return result;

    global_lb_ = lower_bound_impl(w_, dims_);
    greedy_incumbent();
    if (best_ > global_lb_) {
      assign_.assign(n_, -1);
      bins_.clear();
      used_[0] = used_[1] = used_[2] = 0.0;
      descend(0);
    }

    result.bins = best_;
    result.assignment = canonical(best_assign_);
    return result;
  }

 private:
  static double key(const Weights& it) {
    return std::max(it[0], std::max(it[1], it[2]));
  }

  // First fit over the search order seeds the incumbent and its witness.
  void greedy_incumbent() {
    std::vector<Weights> bins;
    best_assign_.assign(n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      const Weights& it = w_[order_[i]];
      bool placed = false;
      for (std::size_t b = 0; b < bins.size(); ++b) {
        if (fits(bins[b], it)) {
          add(bins[b], it);
          best_assign_[order_[i]] = static_cast<int>(b);
          placed = true;
          break;
        }
      }
      if (!placed) {
        bins.push_back({0.0, 0.0, 0.0});
        add(bins.back(), it);
        best_assign_[order_[i]] = static_cast<int>(bins.size()) - 1;
      }
    }
    best_ = static_cast<int>(bins.size());
  }

  bool fits(const Weights& bin, const Weights& it) const {
    for (int d = 0; d < dims_; ++d) {
      if (bin[d] + it[d] > 1.0 + kEps) return false;
    }
    return true;
  }

  void add(Weights& bin, const Weights& it) {
    for (int d = 0; d < 3; ++d) bin[d] += it[d];
  }

  // Additional bins needed for the unassigned suffix, given the total free
  // capacity of the open bins.
  int suffix_need(std::size_t depth) const {
    int need = 0;
    for (int d = 0; d < dims_; ++d) {
      const double free = static_cast<double>(bins_.size()) - used_[d];
      need = std::max(need, ceil_bins(suffix_[depth][d] - free));
    }
    return need;
  }

  void descend(std::size_t depth) {
    if (best_ == global_lb_) return;  // cannot improve further
    if (depth == n_) {
      best_ = static_cast<int>(bins_.size());
      best_assign_ = assign_;
      return;
    }
    const int open = static_cast<int>(bins_.size());
    if (open + suffix_need(depth) >= best_) return;

    const std::size_t item = order_[depth];
    const Weights& it = w_[item];
    for (int b = 0; b < open; ++b) {
      if (!fits(bins_[b], it)) continue;
      apply(b, it, 1.0);
      assign_[item] = b;
      descend(depth + 1);
      apply(b, it, -1.0);
    }
    if (open + 1 < best_) {
      bins_.push_back({0.0, 0.0, 0.0});
      apply(open, it, 1.0);
      assign_[item] = open;
      descend(depth + 1);
      bins_.pop_back();
      for (int d = 0; d < dims_; ++d) used_[d] -= it[d];
    }
    assign_[item] = -1;
  }

  void apply(int b, const Weights& it, double sign) {
    for (int d = 0; d < dims_; ++d) {
      bins_[static_cast<std::size_t>(b)][d] += sign * it[d];
      used_[d] += sign * it[d];
    }
  }

  // Renumber bins by first occurrence in original index order.
  std::vector<int> canonical(const std::vector<int>& assign) const {
    std::vector<int> remap(assign.size(), -1);
    std::vector<int> result(assign.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (remap[static_cast<std::size_t>(assign[i])] == -1) {
        remap[static_cast<std::size_t>(assign[i])] = next++;
      }
      result[i] = remap[static_cast<std::size_t>(assign[i])];
    }
    return result;
  }

  std::vector<Weights> w_;
  int dims_;
  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<Weights> suffix_;
  std::vector<Weights> bins_;
  double used_[3] = {0.0, 0.0, 0.0};
  std::vector<int> assign_;
  std::vector<int> best_assign_;
  int best_ = 0;
  int global_lb_ = 0;
};

OptResult solve_checked(std::vector<Weights> w, int dims, int limit) {
  if (w.size() > static_cast<std::size_t>(limit)) {
    throw Error(errc::instance_too_large,
                "instance has " + std::to_string(w.size()) +
                    " items, oracle limit is " + std::to_string(limit));
  }
  return Solver(std::move(w), dims).solve();
}

}  // namespace

OptResult optimal_bins(const Instance& instance, int limit) {
  std::vector<Weights> w;
  w.reserve(instance.items.size());
  for (const Item& it : instance.items) w.push_back({it.s, it.l, 0.0});
  return solve_checked(std::move(w), 2, limit);
}

OptResult optimal_bins(const Instance3& instance, int limit) {
  std::vector<Weights> w;
  w.reserve(instance.items.size());
  for (const Item3& it : instance.items) w.push_back({it.s, it.l, it.t});
  return solve_checked(std::move(w), 3, limit);
}

int lower_bound(const Instance& instance) {
  std::vector<Weights> w;
  w.reserve(instance.items.size());
  for (const Item& it : instance.items) w.push_back({it.s, it.l, 0.0});
  return lower_bound_impl(w, 2);
}

int lower_bound(const Instance3& instance) {
  std::vector<Weights> w;
  w.reserve(instance.items.size());
  for (const Item3& it : instance.items) w.push_back({it.s, it.l, it.t});
  return lower_bound_impl(w, 3);
}

Packing packing_from_assignment(const std::vector<int>& assignment) {
  Packing packing;
  packing.boundaries.push_back(0);
  if (assignment.empty()) return packing;
  const int bins = *std::max_element(assignment.begin(), assignment.end()) + 1;
  for (int b = 0; b < bins; ++b) {
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] == b) packing.order.push_back(i);
    }
    packing.boundaries.push_back(packing.order.size());
  }
  return packing;
}

}  // namespace vpack
