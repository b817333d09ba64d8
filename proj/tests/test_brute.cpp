#include "doctest.h"
#include "rgather/brute.hpp"
#include "test_util.hpp"

using namespace rgather;
using testutil::make_instance;

TEST_CASE("brute_minmax on forced instances") {
  Instance single = make_instance({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}, 0, {1, 2, 3}, {{0, 0}}, 3);
  auto res = brute_minmax(single);
  REQUIRE(res.has_value());
  CHECK(res->cost == 3);
  CHECK(check_feasible(single, res->witness, VariantSpec::plain()).empty());

  Instance starved = make_instance({{0, 1, 1}}, 0, {1}, {{0, 0}}, 2);
  CHECK(!brute_minmax(starved).has_value());
}

TEST_CASE("brute_minmax hand-enumerable path: both ends open") {
  // Facilities at the two ends of a length-10 path, users at 0, 1, 9, 10.
  std::vector<EdgeInput> edges;
  for (int v = 1; v <= 10; ++v) edges.push_back({v - 1, v, 1});
  Instance inst = make_instance(edges, 0, {0, 1, 9, 10}, {{0, 0}, {10, 0}}, 2);
  auto res = brute_minmax(inst);
  REQUIRE(res.has_value());
  CHECK(res->cost == 1);  // open both: {0,1}->left, {9,10}->right
  CHECK(res->witness.open_facilities.size() == 2);
}

TEST_CASE("brute respects its ceilings") {
  Instance inst = make_instance({{0, 1, 1}}, 0, {0, 1}, {{0, 0}, {1, 0}}, 1);
  BruteConfig tiny;
  tiny.max_users = 1;
  CHECK_THROWS_AS(brute_minmax(inst, tiny), Error);
}

TEST_CASE("brute_minsum dominance and trivial cases") {
  Instance single = make_instance({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}, 0, {1, 2, 3}, {{0, 0}}, 1);
  auto res = brute_minsum(single);
  REQUIRE(res.has_value());
  CHECK(res->cost == 6);

  // Huge open cost on one of two facilities: the free one wins alone.
  Instance costly = make_instance({{0, 1, 2}, {0, 2, 2}}, 0, {1, 2}, {{1, 1000}, {2, 0}}, 1);
  auto res2 = brute_minsum(costly);
  REQUIRE(res2.has_value());
  CHECK(res2->witness.open_facilities == std::vector<FacilityId>{1});
  CHECK(res2->cost == 4);  // both users to the free facility at distance 0 and 4
}

TEST_CASE("brute_variants reduces to plain when budget 0 and cap |F|") {
  for (Instance& inst : testutil::small_pool(606, 12)) {
    auto plain = brute_minmax(inst);
    BruteConfig cfg;
    cfg.outlier_budget = 0;
    cfg.open_cap = inst.facility_count();
    auto variant = brute_variants(inst, cfg);
    REQUIRE(plain.has_value() == variant.has_value());
    if (plain) CHECK(plain->cost == variant->cost);
  }
}

TEST_CASE("brute_variants: ignoring the far user removes its cost") {
  // Users clustered near the facility plus one far outlier.
  Instance inst = make_instance({{0, 1, 1}, {0, 2, 1}, {0, 3, 100}}, 0, {1, 2, 3}, {{0, 0}}, 2);
  BruteConfig cfg;
  cfg.outlier_budget = 1;
  auto res = brute_variants(inst, cfg);
  REQUIRE(res.has_value());
  CHECK(res->cost == 1);
  CHECK(res->witness.assignment[2] == -1);
  CHECK(check_feasible(inst, res->witness, VariantSpec::outliers(1)).empty());
}

TEST_CASE("brute_variants cap k=1 equals the best single facility") {
  for (Instance& inst : testutil::small_pool(707, 12)) {
    BruteConfig cfg;
    cfg.open_cap = 1;
    auto res = brute_variants(inst, cfg);
    // closed form: min over f of max user distance
    long long best = -1;
    for (FacilityId f = 0; f < inst.facility_count(); ++f) {
      long long worst = 0;
      for (UserId u = 0; u < inst.user_count(); ++u) {
        worst = std::max(worst, inst.user_facility_distance(u, f));
      }
      if (best < 0 || worst < best) best = worst;
    }
    REQUIRE(res.has_value());
    CHECK(res->cost == best);
  }
}

TEST_CASE("independent enumeration orders find the same optima") {
  // Smoke set: the library brute counts assignments in base |open|; the
  // test oracle recurses user by user. Optima must match exactly.
  for (Instance& inst : testutil::small_pool(808, 10, 10, 6, 3, 3, 25)) {
    auto lib = brute_minmax(inst);
    auto alt = testutil::matrix_brute_minmax(testutil::distance_matrix(inst), inst.r());
    REQUIRE(lib.has_value() == alt.has_value());
    if (lib) {
      CHECK(lib->cost == alt->cost);
      CHECK(check_feasible(inst, lib->witness, VariantSpec::plain()).empty());
      CHECK(evaluate(inst, lib->witness).minmax_cost == lib->cost);
    }
  }
}

TEST_CASE("every brute witness validates for its variant") {
  for (Instance& inst : testutil::small_pool(909, 10, 12, 7, 4, 3, 20, 8)) {
    if (auto res = brute_minmax(inst)) {
      CHECK(check_feasible(inst, res->witness, VariantSpec::plain()).empty());
    }
    if (auto res = brute_minsum(inst)) {
      CHECK(check_feasible(inst, res->witness, VariantSpec::plain()).empty());
      CHECK(evaluate(inst, res->witness).minsum_cost == res->cost);
    }
    BruteConfig cfg;
    cfg.outlier_budget = 1;
    if (auto res = brute_variants(inst, cfg)) {
      CHECK(check_feasible(inst, res->witness, VariantSpec::outliers(1)).empty());
    }
  }
}
