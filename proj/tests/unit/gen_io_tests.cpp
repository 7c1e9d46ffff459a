#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vpack/baselines.hpp"
#include "vpack/gen.hpp"
#include "vpack/io.hpp"
#include "vpack/pack.hpp"

using namespace vpack;

TEST_CASE("generator is deterministic per seed") {
  const auto a = generate_items(64, 42, 0.6, Dist::uniform);
  const auto b = generate_items(64, 42, 0.6, Dist::uniform);
  const auto c = generate_items(64, 43, 0.6, Dist::uniform);
  REQUIRE(a.size() == 64);
  CHECK(std::equal(a.begin(), a.end(), b.begin(),
                   [](const Item& x, const Item& y) {
                     return x.s == y.s && x.l == y.l;
                   }));
  CHECK_FALSE(std::equal(a.begin(), a.end(), c.begin(),
                         [](const Item& x, const Item& y) {
                           return x.s == y.s && x.l == y.l;
                         }));
}

TEST_CASE("distribution families match their shapes") {
  const double rho_max = 0.6;

  for (const Item& it : generate_items(200, 1, rho_max, Dist::uniform)) {
    CHECK(it.s > 0.0);
    CHECK(it.s <= rho_max);
    CHECK(it.l > 0.0);
    CHECK(it.l <= rho_max);
  }
  for (const Item& it : generate_items(200, 2, rho_max, Dist::anticorrelated)) {
    const double hi = std::max(it.s, it.l);
    CHECK(hi > 0.9 * rho_max);
    CHECK(hi <= rho_max);
  }
  int ties = 0;
  for (const Item& it : generate_items(400, 3, rho_max, Dist::correlated)) {
    CHECK(it.l <= rho_max);
    CHECK(std::abs(it.s - it.l) <= 0.1 * it.s + 1e-12);
    if (it.s == it.l) ++ties;
  }
  CHECK(ties > 0);  // exact ties exercise the tie rule
  for (const Item& it : generate_items(50, 4, rho_max, Dist::s_only)) {
    CHECK(it.l == 0.0);
    CHECK(it.s > 0.0);
  }
  for (const Item& it : generate_items(50, 5, rho_max, Dist::l_only)) {
    CHECK(it.s == 0.0);
    CHECK(it.l > 0.0);
  }
}

TEST_CASE("three-dimensional generator fills the third weight") {
  const auto items = generate_items3(100, 9, 0.5, Dist::correlated);
  for (const Item3& it : items) {
    CHECK(it.t > 0.0);
    CHECK(it.t <= 0.5);
  }
}

TEST_CASE("csv round trip preserves weights exactly") {
  const auto items = generate_items(120, 77, 0.9, Dist::uniform);
  std::stringstream buffer;
  write_instance_csv(buffer, items);
  const LoadedInstance loaded = load_instance_csv(buffer);
  REQUIRE(loaded.dims == 2);
  REQUIRE(loaded.inst2.items.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(loaded.inst2.items[i].s == items[i].s);
    CHECK(loaded.inst2.items[i].l == items[i].l);
  }
}

TEST_CASE("csv writer emits identical bytes for identical inputs") {
  const auto items = generate_items(30, 5, 0.4, Dist::anticorrelated);
  std::stringstream a;
  std::stringstream b;
  write_instance_csv(a, items);
  write_instance_csv(b, items);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 4) == "s,l\n");
}

TEST_CASE("empty and header-only files load as empty instances") {
  std::stringstream empty;
  CHECK(load_instance_csv(empty).inst2.items.empty());
  std::stringstream header_only("s,l\n");
  CHECK(load_instance_csv(header_only).inst2.items.empty());
}

TEST_CASE("raw csv routes through normalization") {
  std::stringstream raw("size,load\n50,20\n30,90\n");
  const LoadedInstance loaded = load_instance_csv(raw, 100.0, 100.0);
  REQUIRE(loaded.inst2.items.size() == 2);
  CHECK(loaded.inst2.items[0].s == doctest::Approx(0.5));
  CHECK(loaded.inst2.items[1].l == doctest::Approx(0.9));
  CHECK(loaded.inst2.rho == doctest::Approx(0.9));

  std::stringstream no_caps("size,load\n50,20\n");
  CHECK_THROWS_AS(load_instance_csv(no_caps), Error);
}

TEST_CASE("csv parse errors carry line information") {
  std::stringstream bad_header("weights\n0.1,0.2\n");
  CHECK_THROWS_AS(load_instance_csv(bad_header), Error);

  std::stringstream bad_value("s,l\n0.1,oops\n");
  CHECK_THROWS_WITH_AS(load_instance_csv(bad_value),
                       "line 2: bad decimal value 'oops'", Error);

  std::stringstream too_wide("s,l\n0.1,0.2,0.3\n");
  CHECK_THROWS_AS(load_instance_csv(too_wide), Error);

  std::stringstream over_unit("s,l\n0.1,1.5\n");
  CHECK_THROWS_AS(load_instance_csv(over_unit), Error);
}

TEST_CASE("three-dimensional csv loads") {
  std::stringstream in("s,l,t\n0.1,0.2,0.3\n0.4,0.1,0.2\n");
  const LoadedInstance loaded = load_instance_csv(in);
  CHECK(loaded.dims == 3);
  REQUIRE(loaded.inst3.items.size() == 2);
  CHECK(loaded.inst3.items[1].t == doctest::Approx(0.2));
  CHECK(loaded.inst3.rho == doctest::Approx(0.4));
}

TEST_CASE("run report serializes with stable keys and 1-based positions") {
  const Instance inst =
      make_instance({{0.6, 0.2}, {0.2, 0.6}, {0.6, 0.2}, {0.2, 0.6}});
  const auto [packing, metrics] = pack(inst);
  const auto verification = verify(inst, packing);
  RunConfig config;
  config.input = "trace.csv";
  const ordered_json a =
      make_run_report(config, inst, packing, metrics, verification, 123);
  const ordered_json b =
      make_run_report(config, inst, packing, metrics, verification, 123);
  CHECK(a.dump() == b.dump());
  CHECK(a["boundaries"] == ordered_json({1, 3, 5}));
  CHECK(a["order"] == ordered_json({1, 2, 3, 4}));
  CHECK(a["q"] == 2);
  CHECK(a["caseClass"] == "all-complete");

  // Round trip back to a packing.
  const Packing restored = packing_from_report(a, inst.items.size());
  CHECK(restored.order == packing.order);
  CHECK(restored.boundaries == packing.boundaries);
}

TEST_CASE("boundaries-only report implies the identity order") {
  ordered_json bare;
  bare["boundaries"] = {1, 2, 4};
  const Packing packing = packing_from_report(bare, 3);
  CHECK(packing.order == std::vector<std::size_t>({0, 1, 2}));
  CHECK(packing.boundaries == std::vector<std::size_t>({0, 1, 3}));
}
