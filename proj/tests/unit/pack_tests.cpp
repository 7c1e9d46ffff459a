#include <doctest.h>

#include <algorithm>
#include <vector>

#include "vpack/core.hpp"
#include "vpack/pack.hpp"

using namespace vpack;

namespace {

const PackOptions kDebug{true};

std::vector<std::vector<std::size_t>> sorted_bins(const Packing& packing) {
  auto bins = packing.bins();
  for (auto& bin : bins) std::sort(bin.begin(), bin.end());
  return bins;
}

}  // namespace

TEST_CASE("find_next_s scans for the next s-heavy position") {
  const std::vector<Item> two{{0.2, 0.5}, {0.5, 0.2}};
  CHECK(find_next_s(two, 1) == 2);
  const std::vector<Item> none{{0.2, 0.5}, {0.1, 0.9}};
  CHECK(find_next_s(none, 1) == 3);
  const std::vector<Item> tie{{0.3, 0.3}};
  CHECK(find_next_s(tie, 0) == 1);
}

TEST_CASE("find_next_l uses the strict inequality") {
  const std::vector<Item> two{{0.2, 0.5}, {0.5, 0.2}};
  CHECK(find_next_l(two, 0) == 1);
  const std::vector<Item> tie{{0.3, 0.3}};
  CHECK(find_next_l(tie, 0) == 2);
  const std::vector<Item> swapped{{0.5, 0.2}, {0.2, 0.5}};
  CHECK(find_next_l(swapped, 1) == 2);
}

TEST_CASE("find_next respects the assigned frontier") {
  const std::vector<Item> items{{0.5, 0.2}, {0.5, 0.2}, {0.5, 0.2}};
  CHECK(find_next_s(items, 0, 3) == 3);
  CHECK(find_next_s(items, 0, 4) == 4);  // everything assigned
}

TEST_CASE("pack of an empty instance") {
  const auto [packing, metrics] = pack(make_instance({}), kDebug);
  CHECK(packing.bin_count() == 0);
  CHECK(packing.boundaries == std::vector<std::size_t>{0});
  CHECK(metrics.swaps == 0);
  CHECK(metrics.bins_opened == 0);
}

TEST_CASE("pack of a single item") {
  const auto [packing, metrics] = pack(make_instance({{0.4, 0.3}}), kDebug);
  CHECK(packing.bin_count() == 1);
  CHECK(packing.boundaries == std::vector<std::size_t>({0, 1}));
  CHECK(packing.order == std::vector<std::size_t>({0}));
  CHECK(metrics.swaps == 0);
}

TEST_CASE("four-item alternating trace packs into two complete bins") {
  const Instance inst =
      make_instance({{0.6, 0.2}, {0.2, 0.6}, {0.6, 0.2}, {0.2, 0.6}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(packing.bin_count() == 2);
  CHECK(sorted_bins(packing) ==
        std::vector<std::vector<std::size_t>>({{0, 1}, {2, 3}}));
  CHECK(metrics.swaps == 0);

  const auto report = verify(inst, packing);
  CHECK(report.feasible);
  CHECK(report.per_bin[0].s_sum == doctest::Approx(0.8));
  CHECK(report.per_bin[0].l_sum == doctest::Approx(0.8));
  CHECK(report.per_bin[1].s_sum == doctest::Approx(0.8));
  CHECK(report.case_class == CaseClass::all_complete);
  CHECK(report.per_bin[0].complete);
  CHECK(report.per_bin[1].complete);
}

TEST_CASE("three-item trace closes the first bin complete") {
  // Seed (0.7, 0.1); adding (0.1, 0.7) reaches (0.8, 0.8), complete at
  // threshold 0.3; the last item seeds the final bin.
  const Instance inst = make_instance({{0.7, 0.1}, {0.1, 0.7}, {0.4, 0.3}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(packing.bin_count() == 2);
  CHECK(sorted_bins(packing) ==
        std::vector<std::vector<std::size_t>>({{0, 1}, {2}}));
  CHECK(verify(inst, packing).feasible);
}

TEST_CASE("overflow ejection swaps out the seed and leaves a complete bin") {
  // Bin {(0.5, 0.1)}, incoming l-heavy (0.6, 0.7): S would reach 1.1, so the
  // seed is ejected and the bin {(0.6, 0.7)} is complete for rho = 0.7.
  const Instance inst = make_instance({{0.5, 0.1}, {0.6, 0.7}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(metrics.overflow_ejections == 1);
  CHECK(packing.bin_count() == 2);
  CHECK(packing.bins() ==
        std::vector<std::vector<std::size_t>>({{1}, {0}}));
  const auto report = verify(inst, packing);
  CHECK(report.per_bin[0].s_sum == doctest::Approx(0.6));
  CHECK(report.per_bin[0].l_sum == doctest::Approx(0.7));
  CHECK(report.per_bin[0].complete);
}

TEST_CASE("overflow ejection at rho 0.9") {
  const Instance inst = make_instance({{0.9, 0.05}, {0.2, 0.9}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(metrics.overflow_ejections == 1);
  const auto report = verify(inst, packing);
  CHECK(report.per_bin[0].s_sum == doctest::Approx(0.2));
  CHECK(report.per_bin[0].l_sum == doctest::Approx(0.9));
  CHECK(report.per_bin[0].complete);  // threshold 0.1
}

TEST_CASE("mirrored ejection on the load dimension") {
  // Bin {(0.1, 0.5)}, incoming s-heavy (0.7, 0.6): L would reach 1.1; the
  // seed is ejected and {(0.7, 0.6)} is complete for rho = 0.7.
  const Instance inst = make_instance({{0.1, 0.5}, {0.7, 0.6}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(metrics.overflow_ejections == 1);
  CHECK(packing.bins() ==
        std::vector<std::vector<std::size_t>>({{1}, {0}}));
  const auto report = verify(inst, packing);
  CHECK(report.per_bin[0].s_sum == doctest::Approx(0.7));
  CHECK(report.per_bin[0].l_sum == doctest::Approx(0.6));
  CHECK(report.per_bin[0].complete);
}

TEST_CASE("remaining phase continues the open bin next-fit on s") {
  // Open bin holds (0.5, 0.3); (0.4, 0.1) joins for S = 0.9; (0.4, 0.2)
  // would overflow so the bin closes s-complete and the item starts the
  // final bin.
  const Instance inst = make_instance({{0.5, 0.3}, {0.4, 0.1}, {0.4, 0.2}}, 0.5);
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(packing.bin_count() == 2);
  CHECK(sorted_bins(packing) ==
        std::vector<std::vector<std::size_t>>({{0, 1}, {2}}));
  const auto report = verify(inst, packing);
  CHECK(report.per_bin[0].s_sum == doctest::Approx(0.9));
  CHECK(report.per_bin[0].s_complete);
  CHECK(report.case_class == CaseClass::all_s_complete);
}

TEST_CASE("all zero-weight items share one bin") {
  const Instance inst =
      make_instance({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(packing.bin_count() == 1);
  CHECK(verify(inst, packing).feasible);
}

TEST_CASE("carried bin with a dominant l-weight stays feasible in s-only remains") {
  // The open bin enters the remaining phase with L far above S; a fat
  // balanced s-heavy item must trigger the ejection rule, not blow the L
  // capacity.
  const Instance inst =
      make_instance({{0.01, 0.005}, {0.005, 0.9}, {0.9, 0.89}});
  const auto [packing, metrics] = pack(inst, kDebug);
  CHECK(metrics.overflow_ejections == 1);
  const auto report = verify(inst, packing);
  CHECK(report.feasible);
  CHECK(packing.bin_count() == 2);
  CHECK(sorted_bins(packing) ==
        std::vector<std::vector<std::size_t>>({{0, 2}, {1}}));
  CHECK(report.case_class != CaseClass::violation);
}

TEST_CASE("complete bins close immediately after seeding") {
  // rho = 0.6. The first two items are complete on their own at threshold
  // 0.4 and must close as singletons before anything lands on top of them;
  // the third bin then resolves by ejection in the remaining phase.
  const Instance inst =
      make_instance({{0.55, 0.5}, {0.5, 0.52}, {0.05, 0.6}, {0.6, 0.55}});
  const auto [packing, metrics] = pack(inst, kDebug);
  const auto report = verify(inst, packing);
  CHECK(report.feasible);
  CHECK(report.case_class == CaseClass::all_complete);
  CHECK(metrics.overflow_ejections == 1);
  CHECK(packing.bin_count() == 4);
  CHECK(packing.bins() ==
        std::vector<std::vector<std::size_t>>({{0}, {1}, {3}, {2}}));
}

TEST_CASE("rho of one degenerates to instantly-complete bins") {
  const Instance inst = make_instance({{1.0, 0.3}, {0.4, 0.2}, {0.2, 1.0}});
  const auto [packing, metrics] = pack(inst, kDebug);
  const auto report = verify(inst, packing);
  CHECK(report.feasible);
  for (const auto& bin : report.per_bin) {
    CHECK(bin.complete);  // threshold is zero
  }
}

TEST_CASE("s-only and l-only instances run the remaining phases end to end") {
  const Instance s_only =
      make_instance({{0.4, 0.0}, {0.5, 0.0}, {0.3, 0.0}, {0.2, 0.0}, {0.45, 0.0}});
  const auto [sp_pack, sp_metrics] = pack(s_only, kDebug);
  const auto s_report = verify(s_only, sp_pack);
  CHECK(s_report.feasible);
  CHECK(s_report.case_class == CaseClass::all_s_complete);

  const Instance l_only =
      make_instance({{0.0, 0.4}, {0.0, 0.5}, {0.0, 0.3}, {0.0, 0.2}, {0.0, 0.45}});
  const auto [lp_pack, lp_metrics] = pack(l_only, kDebug);
  const auto l_report = verify(l_only, lp_pack);
  CHECK(l_report.feasible);
  CHECK(l_report.case_class == CaseClass::all_l_complete);
}

TEST_CASE("pack rejects weights above unit capacity") {
  Instance bogus;
  bogus.items = {{1.5, 0.2}};
  bogus.rho = 1.0;
  CHECK_THROWS_AS(pack(bogus), Error);
  try {
    pack(bogus);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::item_exceeds_unit_capacity);
  }
}

TEST_CASE("pack is deterministic") {
  const Instance inst = make_instance(
      {{0.3, 0.1}, {0.1, 0.45}, {0.2, 0.2}, {0.45, 0.3}, {0.05, 0.4}});
  const auto [a, am] = pack(inst, kDebug);
  const auto [b, bm] = pack(inst, kDebug);
  CHECK(a.order == b.order);
  CHECK(a.boundaries == b.boundaries);
  CHECK(am.swaps == bm.swaps);
  CHECK(am.cursor_advances == bm.cursor_advances);
}

TEST_CASE("pack_in_place permutes the caller's buffer") {
  const Instance inst = make_instance({{0.5, 0.1}, {0.6, 0.7}});
  std::vector<Item> buffer = inst.items;
  std::vector<std::size_t> boundaries;
  const Metrics metrics = pack_in_place(buffer, inst.rho, boundaries, kDebug);
  CHECK(metrics.overflow_ejections == 1);
  CHECK(boundaries == std::vector<std::size_t>({0, 1, 2}));
  // The ejection swapped the two items in place.
  CHECK(buffer[0].s == doctest::Approx(0.6));
  CHECK(buffer[1].s == doctest::Approx(0.5));

  // Same boundaries as the index-map variant.
  const auto [packing, pm] = pack(inst, kDebug);
  CHECK(packing.boundaries == boundaries);
}
