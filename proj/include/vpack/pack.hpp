#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "vpack/core.hpp"

namespace vpack {

// Operation counters for the linear-time engine. The budgets are hard
// guarantees checked by the test suite: swaps <= n + q and
// cursor_advances <= 2n on every run.
struct Metrics {
  std::uint64_t swaps = 0;
  std::uint64_t cursor_advances = 0;
  std::uint64_t bins_opened = 0;
  std::uint64_t overflow_ejections = 0;
  std::uint64_t loop_iterations = 0;
};

struct PackOptions {
  // O(1) invariant checks at every ejection and closure; a failure throws
  // Error(errc::internal_invariant) and signals an engine bug, never a data
  // condition.
  bool debug_assertions = false;
};

// Engine state snapshot, exposed for instrumentation and property tests.
// Positions are 0-based into the working array; cursors saturate at n.
struct PackState {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  double s_sum = 0.0;  // cumulative s-weight of the current bin
  double l_sum = 0.0;
  std::size_t sp = 0;         // first unassigned s-heavy position, n if none
  std::size_t lp = 0;         // first unassigned l-heavy position, n if none
  std::size_t last_s = npos;  // seat of the current bin's latest s-heavy item
  std::size_t last_l = npos;
  std::size_t bin_first = 0;  // first position of the current bin
  std::size_t frontier = 0;   // first unassigned position
  std::size_t bin_index = 0;  // bins closed so far
};

// Called at every iteration boundary with the live state and the working
// array. Intended for invariant checks; keep it cheap on large instances.
using PackObserver =
    std::function<void(const PackState&, std::span<const Item>)>;

// The in-place linear-time packer. Returns a feasible packing whose bins,
// except possibly the last, are all complete, all s-complete, or all
// l-complete. Operates on a working copy and materializes the permutation as
// an index map.
std::pair<Packing, Metrics> pack(const Instance& instance,
                                 const PackOptions& options = {},
                                 const PackObserver& observer = {});

// Truly in-place variant: permutes the caller's buffer directly and
// allocates nothing proportional to n beyond the boundary vector.
Metrics pack_in_place(std::span<Item> items, double rho,
                      std::vector<std::size_t>& boundaries,
                      const PackOptions& options = {},
                      const PackObserver& observer = {});

// Scan helpers in the boundary array's 1-based notation: smallest position
// p > from with p >= frontier holding an s-heavy (resp. l-heavy) item,
// n + 1 when there is none. `frontier` is the first unassigned position.
std::size_t find_next_s(std::span<const Item> items, std::size_t from,
                        std::size_t frontier = 1);
std::size_t find_next_l(std::span<const Item> items, std::size_t from,
                        std::size_t frontier = 1);

}  // namespace vpack
