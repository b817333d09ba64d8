#include "doctest.h"
#include "rgather/brute.hpp"
#include "rgather/minsum.hpp"
#include "test_util.hpp"

using namespace rgather;
using testutil::make_instance;

TEST_CASE("solve_minsum forced single facility") {
  Instance inst = make_instance({{0, 1, 1}, {0, 2, 2}}, 0, {1, 2}, {{0, 0}}, 2);
  MinsumResult res = solve_minsum(inst);
  CHECK(res.cost == 3);
  CHECK(check_feasible(inst, res.solution, VariantSpec::plain()).empty());
  CHECK(evaluate(inst, res.solution).minsum_cost == 3);
}

TEST_CASE("leaf table base cases: absorb locally or send everyone up") {
  // One vertex hosting r users and one facility with open cost 5 is a
  // legal (if degenerate) full binary tree for the table builder.
  Instance inst = make_instance({}, 0, {0, 0}, {{0, 5}}, 2);
  MinsumTables tables(inst);
  CHECK(tables.value(0, 0) == 5);       // open, absorb both
  CHECK(tables.value(0, 2) == 0);       // closed, both exit upward
  CHECK(tables.pre_value(0, 2) == 0);
  CHECK(tables.pre_value(0, 0) == kInfCost);
  CHECK(tables.value(0, 1) == kInfCost);  // can't split: one up while opening needs 2
  CHECK(tables.optimum() == 5);
}

TEST_CASE("boundary balances stay infinite") {
  Instance inst = make_instance({{0, 1, 3}, {0, 2, 4}}, 0, {1}, {{2, 0}}, 1);
  Instance normal = normalized(inst);
  MinsumTables tables(normal);
  const WeightedTree& tree = normal.tree();
  int total = tables.user_total();
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    int inside = 0;
    for (UserId u = 0; u < normal.user_count(); ++u) {
      inside += tree.in_subtree(v, normal.user_vertex(u)) ? 1 : 0;
    }
    int outside = total - inside;
    for (int t = -total; t <= total; ++t) {
      if (t < -outside || t > inside) {
        CAPTURE(v); CAPTURE(t);
        CHECK(tables.value(v, t) == kInfCost);
      }
    }
  }
  CHECK(tables.optimum() == 7);  // the lone user walks 3 + 4
}

TEST_CASE("solve_minsum equals brute_minsum on random instances with open costs") {
  for (Instance& inst : testutil::small_pool(1111, 40, 12, 8, 4, 3, 20, 10)) {
    auto ref = brute_minsum(inst);
    REQUIRE(ref.has_value());
    MinsumResult res = solve_minsum(inst);
    CAPTURE(inst.user_count());
    REQUIRE(res.cost == ref->cost);
    CHECK(check_feasible(inst, res.solution, VariantSpec::plain()).empty());
    CHECK(evaluate(inst, res.solution).minsum_cost == res.cost);
  }
}

TEST_CASE("solve_minsum infeasible cases throw") {
  Instance starved = make_instance({{0, 1, 1}}, 0, {1}, {{0, 0}}, 2);
  CHECK_THROWS_AS(solve_minsum(starved), Error);
  Instance no_fac = make_instance({{0, 1, 1}}, 0, {0, 1}, {}, 1);
  CHECK_THROWS_AS(solve_minsum(no_fac), Error);
}

TEST_CASE("reconstruction crosses every edge in one direction only") {
  for (Instance& inst : testutil::small_pool(2222, 25, 12, 8, 4, 3, 20, 6)) {
    MinsumResult res = solve_minsum(inst);
    const WeightedTree& tree = inst.tree();
    // +1 when a path climbs the edge above v, -1 when it descends.
    std::vector<int> up(tree.vertex_count(), 0), down(tree.vertex_count(), 0);
    for (UserId u = 0; u < inst.user_count(); ++u) {
      FacilityId f = res.solution.assignment[u];
      REQUIRE(f >= 0);
      VertexId a = inst.user_vertex(u);
      VertexId b = inst.facility(f).vertex;
      VertexId m = tree.lca(a, b);
      for (VertexId v = a; v != m; v = tree.parent(v)) ++up[v];
      for (VertexId v = b; v != m; v = tree.parent(v)) ++down[v];
    }
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
      CAPTURE(v);
      CHECK((up[v] == 0 || down[v] == 0));
    }
  }
}

TEST_CASE("a free extra facility never hurts") {
  std::mt19937_64 rng(3333);
  for (Instance& inst : testutil::small_pool(3333, 15, 10, 6, 3, 2, 20, 10)) {
    long long before = solve_minsum(inst).cost;
    // Duplicate the instance with one more zero-cost facility somewhere.
    std::vector<EdgeInput> edges;
    for (VertexId v = 0; v < inst.tree().vertex_count(); ++v) {
      if (inst.tree().parent(v) >= 0) {
        edges.push_back({inst.tree().parent(v), v, inst.tree().edge_length_to_parent(v)});
      }
    }
    auto facilities = inst.facilities();
    facilities.push_back(
        {std::uniform_int_distribution<int>(0, inst.tree().vertex_count() - 1)(rng), 0});
    Instance richer(WeightedTree::build(edges, inst.tree().root()),
                    std::vector<VertexId>(inst.user_vertices()), std::move(facilities), inst.r());
    CHECK(solve_minsum(richer).cost <= before);
  }
}
