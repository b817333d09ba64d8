#include <random>

#include "doctest.h"
#include "rgather/instance.hpp"
#include "test_util.hpp"

using namespace rgather;
using testutil::make_instance;

namespace {

// Star with the facility at the hub and three users at spoke tips.
Instance star_instance() {
  return make_instance({{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}, 0, {1, 2, 3}, {{0, 0}}, 3);
}

}  // namespace

TEST_CASE("evaluate on the single-facility star") {
  Instance inst = star_instance();
  Solution sol{{0}, {0, 0, 0}};
  CostReport report = evaluate(inst, sol);
  CHECK(report.minmax_cost == 3);
  CHECK(report.minsum_cost == 6);
  CHECK(report.per_facility_load[0] == 3);
  CHECK(check_feasible(inst, sol, VariantSpec::plain()).empty());
}

TEST_CASE("evaluate of an empty instance is zero") {
  Instance inst = make_instance({{0, 1, 4}}, 0, {}, {{1, 0}}, 1);
  Solution sol{{}, {}};
  CostReport report = evaluate(inst, sol);
  CHECK(report.minmax_cost == 0);
  CHECK(report.minsum_cost == 0);
}

TEST_CASE("evaluate rejects dangling references") {
  Instance inst = star_instance();
  CHECK_THROWS_AS(evaluate(inst, Solution{{0}, {0, 0}}), Error);       // missing user
  CHECK_THROWS_AS(evaluate(inst, Solution{{5}, {0, 0, 0}}), Error);    // bad facility
  CHECK_THROWS_AS(evaluate(inst, Solution{{0}, {0, 0, 9}}), Error);    // bad assignment
}

TEST_CASE("evaluate agrees with path-walk recomputation on random instances") {
  std::mt19937_64 rng(42);
  for (Instance& inst : testutil::small_pool(101, 20, 12, 6, 3, 2, 30, 10)) {
    // Random feasible-shaped solution: open one facility, send everyone there.
    FacilityId f = std::uniform_int_distribution<int>(0, inst.facility_count() - 1)(rng);
    Solution sol;
    sol.open_facilities = {f};
    sol.assignment.assign(inst.user_count(), f);
    CostReport report = evaluate(inst, sol);
    long long minmax = 0, minsum = inst.facility(f).open_cost;
    for (UserId u = 0; u < inst.user_count(); ++u) {
      long long d = testutil::path_walk_distance(inst.tree(), inst.user_vertex(u),
                                                 inst.facility(f).vertex);
      minmax = std::max(minmax, d);
      minsum += d;
    }
    CHECK(report.minmax_cost == minmax);
    CHECK(report.minsum_cost == minsum);
  }
}

TEST_CASE("minsum decomposes over edge crossings") {
  std::mt19937_64 rng(77);
  for (Instance& inst : testutil::small_pool(202, 15, 10, 6, 3, 2, 25)) {
    FacilityId f = std::uniform_int_distribution<int>(0, inst.facility_count() - 1)(rng);
    Solution sol;
    sol.open_facilities = {f};
    sol.assignment.assign(inst.user_count(), f);

    // Count, per edge, how many user->facility paths cross it.
    const WeightedTree& tree = inst.tree();
    std::vector<long long> crossings(tree.vertex_count(), 0);
    for (UserId u = 0; u < inst.user_count(); ++u) {
      VertexId a = inst.user_vertex(u);
      VertexId b = inst.facility(f).vertex;
      VertexId m = tree.lca(a, b);
      for (VertexId v = a; v != m; v = tree.parent(v)) ++crossings[v];
      for (VertexId v = b; v != m; v = tree.parent(v)) ++crossings[v];
    }
    long long total = inst.facility(f).open_cost;
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
      total += crossings[v] * tree.edge_length_to_parent(v);
    }
    CHECK(evaluate(inst, sol).minsum_cost == total);
  }
}

TEST_CASE("check_feasible flags the spec'd violations") {
  Instance inst = make_instance({{0, 1, 1}, {0, 2, 5}}, 0, {1, 2}, {{0, 0}, {1, 0}}, 2);

  SUBCASE("under-loaded facility") {
    Solution sol{{0, 1}, {0, 1}};
    auto violations = check_feasible(inst, sol, VariantSpec::plain());
    REQUIRE(violations.size() == 2);
    CHECK(violations[0].type == Violation::Type::UnderLoadedFacility);
  }
  SUBCASE("two users on one facility is fine when r=2") {
    Solution sol{{0}, {0, 0}};
    CHECK(check_feasible(inst, sol, VariantSpec::plain()).empty());
  }
  SUBCASE("unassigned user") {
    Solution sol{{0}, {0, -1}};
    auto violations = check_feasible(inst, sol, VariantSpec::plain());
    REQUIRE(!violations.empty());
    CHECK(violations[0].type == Violation::Type::UnassignedUser);
  }
  SUBCASE("assignment to closed facility") {
    Solution sol{{0}, {0, 1}};
    auto violations = check_feasible(inst, sol, VariantSpec::plain());
    CHECK(!violations.empty());
    CHECK(violations[0].type == Violation::Type::AssignedToClosedFacility);
  }
  SUBCASE("outlier budget") {
    Solution sol{{0}, {0, -1}};
    CHECK(!check_feasible(inst, sol, VariantSpec::outliers(0)).empty());
    // One ignored user within budget, but the open facility drops below r.
    auto violations = check_feasible(inst, sol, VariantSpec::outliers(1));
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].type == Violation::Type::UnderLoadedFacility);
  }
  SUBCASE("facility cap") {
    Solution sol{{0, 1}, {0, 1}};
    auto violations = check_feasible(inst, sol, VariantSpec::capped(1));
    bool found = false;
    for (const auto& v : violations) found |= v.type == Violation::Type::TooManyOpen;
    CHECK(found);
  }
}

TEST_CASE("proximity validation uses the nearest rule") {
  // Users at both ends, facilities at both ends; r=1.
  Instance inst = make_instance({{0, 1, 10}}, 0, {0, 1}, {{0, 0}, {1, 0}}, 1);
  Solution wrong{{0, 1}, {1, 0}};  // both users cross over
  auto violations = check_feasible(inst, wrong, VariantSpec::proximity());
  CHECK(violations.size() == 2);
  CHECK(violations[0].type == Violation::Type::NotNearestFacility);
  Solution right{{0, 1}, {0, 1}};
  CHECK(check_feasible(inst, right, VariantSpec::proximity()).empty());
}

TEST_CASE("nearest_open_facility picks the closest, id on ties") {
  Instance inst = make_instance({{0, 1, 3}, {0, 2, 5}, {0, 3, 3}}, 0, {0},
                                {{1, 0}, {2, 0}, {3, 0}}, 1);
  std::vector<FacilityId> all{0, 1, 2};
  NearestResult best = nearest_open_facility(inst, all, 0);
  CHECK(best.facility == 0);
  CHECK(best.distance == 3);
  CHECK(best.tie);  // facility 2 is also at distance 3

  std::vector<FacilityId> pair{1, 2};
  NearestResult no_tie = nearest_open_facility(inst, pair, 0);
  CHECK(no_tie.facility == 2);
  CHECK(!no_tie.tie);

  CHECK_THROWS_AS(nearest_open_facility(inst, std::vector<FacilityId>{}, 0), Error);

  // A tie among farther facilities must not stick once a closer one shows up.
  Instance far_tie = make_instance({{0, 1, 5}, {0, 2, 5}, {0, 3, 2}}, 0, {0},
                                   {{1, 0}, {2, 0}, {3, 0}}, 1);
  NearestResult cleared = nearest_open_facility(far_tie, std::vector<FacilityId>{0, 1, 2}, 0);
  CHECK(cleared.facility == 2);
  CHECK(!cleared.tie);
}

TEST_CASE("nearest_open_facility agrees with a linear scan") {
  std::mt19937_64 rng(31337);
  for (Instance& inst : testutil::small_pool(303, 20, 14, 6, 4, 2, 15)) {
    std::vector<FacilityId> open;
    for (FacilityId f = 0; f < inst.facility_count(); ++f) {
      if (std::bernoulli_distribution(0.6)(rng)) open.push_back(f);
    }
    if (open.empty()) open.push_back(0);
    for (VertexId v = 0; v < inst.tree().vertex_count(); ++v) {
      NearestResult fast = nearest_open_facility(inst, open, v);
      FacilityId expected = -1;
      long long best = -1;
      for (FacilityId f : open) {
        long long d = inst.tree().distance(v, inst.facility(f).vertex);
        if (expected < 0 || d < best || (d == best && f < expected)) {
          expected = f;
          best = d;
        }
      }
      REQUIRE(fast.facility == expected);
      REQUIRE(fast.distance == best);
    }
  }
}

TEST_CASE("normalized instances keep ids and distances") {
  for (Instance& inst : testutil::small_pool(404, 10)) {
    Instance normal = normalized(inst);
    REQUIRE(normal.is_normal_form());
    CHECK(normal.user_count() == inst.user_count());
    CHECK(normal.facility_count() == inst.facility_count());
    CHECK(normal.r() == inst.r());
    for (UserId u = 0; u < inst.user_count(); ++u) {
      for (FacilityId f = 0; f < inst.facility_count(); ++f) {
        REQUIRE(normal.user_facility_distance(u, f) == inst.user_facility_distance(u, f));
      }
    }
    CHECK(normal.candidate_distances() == inst.candidate_distances());
  }
}
