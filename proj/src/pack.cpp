#include "vpack/pack.hpp"

#include <algorithm>
#include <numeric>
#include <string>

// In-place packing engine.
//
// The working array keeps a strict prefix/suffix discipline: positions below
// the frontier are assigned to closed bins or the current bin, positions at
// or above it are unassigned, and every bin is a contiguous segment. Two
// forward-only cursors sp and lp track the first unassigned s-heavy and
// l-heavy positions; their minimum always sits exactly at the frontier, which
// is what makes every scan amortized O(1).
//
// Each step adds the item under one cursor to the current bin, balancing the
// two weight sums: when S >= L the next l-heavy item is taken, otherwise the
// next s-heavy one. Only the larger sum's dimension can overflow, and when it
// does, swapping the incoming item with the bin's most recent opposite-heavy
// item leaves the bin complete (both sums in [1 - rho, 1]), so it closes on
// the spot. A bin also closes whenever both sums reach 1 - rho, including
// immediately after seeding; the next unassigned item then seeds the next
// bin. Once one heaviness class runs out, the surviving cursor walks the
// remaining suffix with the same rules; a same-class overflow there closes
// the bin next-fit style, which keeps it complete in the scanned dimension.

namespace vpack {

namespace {

constexpr std::size_t npos = PackState::npos;

class Engine {
 public:
  Engine(std::span<Item> items, std::size_t* ids, double rho,
         const PackOptions& options, const PackObserver& observer,
         std::vector<std::size_t>& bounds, Metrics& metrics)
      : a_(items),
        ids_(ids),
        n_(items.size()),
        rho_(rho),
        threshold_(1.0 - rho - kEps),
        opt_(options),
        obs_(observer),
        bounds_(bounds),
        m_(metrics) {}

  void run() {
    bounds_.assign(1, 0);
    if (n_ == 0) return;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(a_[i].s >= 0.0) || !(a_[i].l >= 0.0) || a_[i].s > 1.0 + kEps ||
          a_[i].l > 1.0 + kEps) {
        throw Error(errc::item_exceeds_unit_capacity,
                    "item " + std::to_string(i + 1) +
                        " is outside the unit capacity range");
      }
    }

    seed(0);
    st_.sp = advance(0, /*s_class=*/true);
    st_.lp = advance(0, /*s_class=*/false);
    cursors_live_ = true;
    close_while_complete();
    notify();

    while (st_.sp < n_ && st_.lp < n_) {
      ++m_.loop_iterations;
      if (st_.s_sum >= st_.l_sum) {
        step(st_.lp, /*incoming_l=*/true);
        st_.lp = advance(st_.lp, /*s_class=*/false);
      } else {
        step(st_.sp, /*incoming_l=*/false);
        st_.sp = advance(st_.sp, /*s_class=*/true);
      }
      close_while_complete();
      notify();
    }

    if (st_.sp < n_) {
      pack_remaining(/*s_side=*/true);
    } else if (st_.lp < n_) {
      pack_remaining(/*s_side=*/false);
    }

    bounds_.push_back(n_);
    m_.bins_opened = bounds_.size() - 1;
  }

 private:
  // One homogeneous suffix remains; the surviving cursor stays glued to the
  // frontier. Carried-over bins can still hold opposite-heavy items, so the
  // ejection rule stays in force.
  void pack_remaining(bool s_side) {
    std::size_t& cur = s_side ? st_.sp : st_.lp;
    while (st_.frontier < n_) {
      ++m_.loop_iterations;
      if (opt_.debug_assertions) {
        check(cur == st_.frontier, "remaining-phase cursor off the frontier");
        check((s_side ? st_.lp : st_.sp) == n_,
              "remaining phase entered with both classes live");
      }
      step(cur, /*incoming_l=*/!s_side);
      if (cur < st_.frontier) {
        m_.cursor_advances += st_.frontier - cur;
        cur = st_.frontier;
      }
      close_while_complete();
      notify();
    }
  }

  // Adds the item at position p to the current bin, resolving overflow.
  // Only the currently-larger sum's dimension can overflow: the bin is
  // incomplete here, so the smaller sum is below 1 - rho and no single
  // weight can push it past 1.
  void step(std::size_t p, bool incoming_l) {
    const double s_new = st_.s_sum + a_[p].s;
    const double l_new = st_.l_sum + a_[p].l;
    const bool s_dim = st_.s_sum >= st_.l_sum;
    if ((s_dim ? s_new : l_new) > 1.0 + kEps) {
      if (incoming_l == s_dim) {
        eject(p, s_dim ? st_.last_s : st_.last_l);
      } else {
        next_fit_close(p);
      }
      return;
    }
    st_.s_sum = s_new;
    st_.l_sum = l_new;
    place(p, incoming_l);
    if (opt_.debug_assertions) {
      check(st_.s_sum <= 1.0 + kEps && st_.l_sum <= 1.0 + kEps,
            "capacity violated by a non-overflow add");
    }
  }

  // Swaps the incoming item with the bin's most recent opposite-heavy one.
  // The bin is complete afterwards and the closure pass must close it; the
  // ejected item waits in the unassigned suffix.
  void eject(std::size_t p, std::size_t victim) {
    if (victim == npos || victim < st_.bin_first || victim >= st_.frontier) {
      throw Error(errc::internal_invariant,
                  "overflow ejection without a victim in the current bin");
    }
    if (opt_.debug_assertions) {
      const double gap = st_.s_sum >= st_.l_sum
                             ? (st_.s_sum - st_.l_sum) - (a_[victim].s - a_[victim].l)
                             : (st_.l_sum - st_.s_sum) - (a_[victim].l - a_[victim].s);
      check(gap <= kEps, "overflow-ejection inequality violated");
    }
    const Item incoming = a_[p];
    do_swap(p, victim);
    ++m_.overflow_ejections;
    st_.s_sum += incoming.s;
    st_.l_sum += incoming.l;
    st_.s_sum -= a_[p].s;  // a_[p] now holds the ejected item
    st_.l_sum -= a_[p].l;
    // last_s / last_l may now dangle; the bin closes before the next read.
    ejected_ = true;
    if (opt_.debug_assertions) {
      check(st_.s_sum >= threshold_ && st_.l_sum >= threshold_ &&
                st_.s_sum <= 1.0 + kEps && st_.l_sum <= 1.0 + kEps,
            "bin not complete after an overflow ejection");
    }
  }

  // Same-class overflow in the remaining phase: plain next-fit closure. The
  // closed bin exceeds 1 - rho in the scanned dimension because the rejected
  // weight is at most rho.
  void next_fit_close(std::size_t p) {
    if (opt_.debug_assertions) {
      check(p == st_.frontier, "next-fit closure away from the frontier");
    }
    close_bin();
    seed(p);
  }

  // Moves the incoming item to the frontier. If it is not already there, the
  // frontier holds the other class's cursor item, which gets displaced to p;
  // every position in between belongs to the incoming item's class, so a
  // single bump re-points the displaced cursor.
  void place(std::size_t p, bool incoming_l) {
    if (p != st_.frontier) {
      do_swap(p, st_.frontier);
      if (incoming_l) {
        if (opt_.debug_assertions) {
          check(st_.sp == st_.frontier, "frontier item is not the s-cursor");
        }
        st_.sp = st_.frontier + 1;
        ++m_.cursor_advances;
        if (opt_.debug_assertions) {
          check(st_.sp < n_ && is_s_heavy(a_[st_.sp]),
                "bumped s-cursor is not on an s-heavy item");
        }
      } else {
        if (opt_.debug_assertions) {
          check(st_.lp == st_.frontier, "frontier item is not the l-cursor");
        }
        st_.lp = st_.frontier + 1;
        ++m_.cursor_advances;
        if (opt_.debug_assertions) {
          check(st_.lp < n_ && is_l_heavy(a_[st_.lp]),
                "bumped l-cursor is not on an l-heavy item");
        }
      }
    }
    (incoming_l ? st_.last_l : st_.last_s) = st_.frontier;
    ++st_.frontier;
  }

  void seed(std::size_t seat) {
    st_.bin_first = seat;
    st_.s_sum = a_[seat].s;
    st_.l_sum = a_[seat].l;
    if (is_s_heavy(a_[seat])) {
      st_.last_s = seat;
      st_.last_l = npos;
    } else {
      st_.last_l = seat;
      st_.last_s = npos;
    }
    st_.frontier = seat + 1;
    if (cursors_live_) {
      // Only the cursor that pointed at the seed moves; an ejected item
      // seeding the next bin was tracked by neither.
      if (st_.sp == seat) {
        st_.sp = advance(st_.sp, /*s_class=*/true);
      } else if (st_.lp == seat) {
        st_.lp = advance(st_.lp, /*s_class=*/false);
      }
    }
  }

  void close_bin() {
    bounds_.push_back(st_.frontier);
    ++st_.bin_index;
  }

  // A complete bin closes as soon as any unassigned item can seed the next
  // one. Runs after seeding too, so the engine never adds to a complete bin.
  void close_while_complete() {
    bool closed = false;
    while (st_.s_sum >= threshold_ && st_.l_sum >= threshold_ &&
           st_.frontier < n_) {
      close_bin();
      seed(st_.frontier);
      closed = true;
    }
    if (opt_.debug_assertions && ejected_) {
      check(closed, "overflow ejection did not close the bin");
    }
    ejected_ = false;
  }

  std::size_t advance(std::size_t p, bool s_class) {
    do {
      ++p;
      ++m_.cursor_advances;
    } while (p < n_ && (s_class ? !is_s_heavy(a_[p]) : !is_l_heavy(a_[p])));
    return p;
  }

  void do_swap(std::size_t x, std::size_t y) {
    if (x == y) return;
    std::swap(a_[x], a_[y]);
    if (ids_ != nullptr) std::swap(ids_[x], ids_[y]);
    ++m_.swaps;
  }

  void check(bool condition, const char* what) const {
    if (!condition) throw Error(errc::internal_invariant, what);
  }

  void notify() const {
    if (obs_) obs_(st_, std::span<const Item>(a_.data(), n_));
  }

  std::span<Item> a_;
  std::size_t* ids_;
  std::size_t n_;
  double rho_;
  double threshold_;
  PackOptions opt_;
  const PackObserver& obs_;
  std::vector<std::size_t>& bounds_;
  Metrics& m_;
  PackState st_;
  bool cursors_live_ = false;
  bool ejected_ = false;
};

}  // namespace

std::pair<Packing, Metrics> pack(const Instance& instance,
                                 const PackOptions& options,
                                 const PackObserver& observer) {
  std::vector<Item> work = instance.items;
  std::vector<std::size_t> ids(work.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});

  Packing packing;
  Metrics metrics;
  Engine engine(work, ids.data(), instance.rho, options, observer,
                packing.boundaries, metrics);
  engine.run();
  packing.order = std::move(ids);
  return {std::move(packing), metrics};
}

Metrics pack_in_place(std::span<Item> items, double rho,
                      std::vector<std::size_t>& boundaries,
                      const PackOptions& options, const PackObserver& observer) {
  Metrics metrics;
  Engine engine(items, nullptr, rho, options, observer, boundaries, metrics);
  engine.run();
  return metrics;
}

std::size_t find_next_s(std::span<const Item> items, std::size_t from,
                        std::size_t frontier) {
  const std::size_t n = items.size();
  for (std::size_t p = std::max(from + 1, frontier); p <= n; ++p) {
    if (is_s_heavy(items[p - 1])) return p;
  }
  return n + 1;
}

std::size_t find_next_l(std::span<const Item> items, std::size_t from,
                        std::size_t frontier) {
  const std::size_t n = items.size();
  for (std::size_t p = std::max(from + 1, frontier); p <= n; ++p) {
    if (is_l_heavy(items[p - 1])) return p;
  }
  return n + 1;
}

}  // namespace vpack
