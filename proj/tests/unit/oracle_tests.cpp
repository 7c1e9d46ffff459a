#include <doctest.h>

#include <algorithm>
#include <vector>

#include "vpack/core.hpp"
#include "vpack/gen.hpp"
#include "vpack/oracle.hpp"
#include "vpack/pack.hpp"
#include "vpack/threedim.hpp"

using namespace vpack;

namespace {

// Exhaustive minimum over all item-to-bin assignments; the independent check
// for the branch-and-bound search. Only the cannot-improve prune is applied.
void brute_recurse(const std::vector<Item>& items, std::size_t i,
                   std::vector<Item>& bins, int& best) {
  if (static_cast<int>(bins.size()) >= best) return;
  if (i == items.size()) {
    best = static_cast<int>(bins.size());
    return;
  }
  // Index-based: the recursive call grows the vector and may reallocate.
  const std::size_t open = bins.size();
  for (std::size_t k = 0; k < open; ++k) {
    if (bins[k].s + items[i].s <= 1.0 + kEps &&
        bins[k].l + items[i].l <= 1.0 + kEps) {
      const Item saved = bins[k];
      bins[k].s += items[i].s;
      bins[k].l += items[i].l;
      brute_recurse(items, i + 1, bins, best);
      bins[k] = saved;
    }
  }
  bins.push_back(items[i]);
  brute_recurse(items, i + 1, bins, best);
  bins.pop_back();
}

int brute_force_bins(const Instance& inst) {
  if (inst.items.empty()) return 0;
  int best = static_cast<int>(inst.items.size()) + 1;
  std::vector<Item> bins;
  brute_recurse(inst.items, 0, bins, best);
  return best;
}

}  // namespace

TEST_CASE("optimal bins on the alternating trace") {
  const Instance inst =
      make_instance({{0.6, 0.2}, {0.2, 0.6}, {0.6, 0.2}, {0.2, 0.6}});
  CHECK(brute_force_bins(inst) == 2);
  const OptResult result = optimal_bins(inst);
  CHECK(result.bins == 2);

  const Packing witness = packing_from_assignment(result.assignment);
  const auto report = verify(inst, witness);
  CHECK(report.feasible);
  CHECK(witness.bin_count() == 2);
}

TEST_CASE("capacity forces two bins") {
  const Instance inst = make_instance({{0.9, 0.1}, {0.9, 0.1}});
  CHECK(optimal_bins(inst).bins == 2);
}

TEST_CASE("empty instance needs no bins") {
  const OptResult result = optimal_bins(make_instance({}));
  CHECK(result.bins == 0);
  CHECK(result.assignment.empty());
  CHECK(packing_from_assignment(result.assignment).bin_count() == 0);
}

TEST_CASE("oracle enforces its size limit") {
  std::vector<Item> items(15, Item{0.01, 0.01});
  CHECK_THROWS_AS(optimal_bins(make_instance(items)), Error);
  CHECK_NOTHROW(optimal_bins(make_instance(items), 20));
}

TEST_CASE("lower bound is the ceiling of the heavier dimension") {
  CHECK(lower_bound(make_instance(
            {{0.6, 0.2}, {0.2, 0.6}, {0.6, 0.2}, {0.2, 0.6}})) == 2);
  CHECK(lower_bound(make_instance({{0.1, 0.9}})) == 1);
  CHECK(lower_bound(make_instance({})) == 0);
  // Sums that are integers within tolerance must not round up.
  std::vector<Item> tenths(10, Item{0.1, 0.0});
  CHECK(lower_bound(make_instance(tenths)) == 1);
}

TEST_CASE("search matches brute force on random small instances") {
  std::uint64_t seed = 400;
  for (Dist dist : {Dist::uniform, Dist::anticorrelated, Dist::correlated}) {
    for (int rep = 0; rep < 40; ++rep) {
      const std::size_t n = 1 + (seed % 7);
      const Instance inst =
          make_instance(generate_items(n, ++seed, 0.9, dist));
      const OptResult result = optimal_bins(inst);
      CHECK(result.bins == brute_force_bins(inst));

      const Packing witness = packing_from_assignment(result.assignment);
      CHECK(verify(inst, witness).feasible);
      CHECK(static_cast<int>(witness.bin_count()) == result.bins);
      CHECK(lower_bound(inst) <= result.bins);
    }
  }
}

TEST_CASE("oracle chain: lower bound <= optimum <= packer bins") {
  std::uint64_t seed = 8200;
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + (seed % 10);
    const Instance inst =
        make_instance(generate_items(n, ++seed, 0.7, Dist::uniform));
    const auto [packing, metrics] = pack(inst, {true});
    const OptResult opt = optimal_bins(inst);
    CHECK(lower_bound(inst) <= opt.bins);
    CHECK(static_cast<std::size_t>(opt.bins) <= packing.bin_count());
  }
}

TEST_CASE("three-dimensional oracle sees the third weight") {
  const Instance3 inst = make_instance3(
      {{0.01, 0.01, 0.9}, {0.01, 0.01, 0.9}, {0.01, 0.01, 0.9}});
  CHECK(optimal_bins(inst).bins == 3);
  CHECK(lower_bound(inst) == 3);
  // The two-dimensional projection fits in one bin.
  const Instance flat = make_instance({{0.01, 0.01}, {0.01, 0.01}, {0.01, 0.01}});
  CHECK(optimal_bins(flat).bins == 1);
}

TEST_CASE("oracle witness is canonical and deterministic") {
  const Instance inst = make_instance(
      {{0.5, 0.1}, {0.5, 0.1}, {0.5, 0.1}, {0.4, 0.4}, {0.1, 0.6}});
  const OptResult a = optimal_bins(inst);
  const OptResult b = optimal_bins(inst);
  CHECK(a.bins == b.bins);
  CHECK(a.assignment == b.assignment);
  CHECK(a.assignment[0] == 0);  // first item always lands in bin zero
}
