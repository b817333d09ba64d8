#include <random>

#include "doctest.h"
#include "rgather/tree.hpp"
#include "test_util.hpp"

using namespace rgather;

TEST_CASE("build_tree basics") {
  std::vector<EdgeInput> single{{0, 1, 5}};
  WeightedTree t = WeightedTree::build(single, 0);
  CHECK(t.vertex_count() == 2);
  CHECK(t.distance(0, 1) == 5);

  std::vector<EdgeInput> path{{0, 1, 5}, {1, 2, 3}};
  WeightedTree p = WeightedTree::build(path, 0);
  CHECK(p.distance(0, 2) == 8);
  CHECK(p.distance(2, 0) == 8);
  CHECK(p.distance(1, 1) == 0);
}

TEST_CASE("build_tree rejects malformed inputs") {
  std::vector<EdgeInput> parallel{{0, 1, 1}, {0, 1, 2}};
  CHECK_THROWS_WITH_AS(static_cast<void>(WeightedTree::build(parallel, 0)),
                       doctest::Contains("CycleDetected"), Error);

  std::vector<EdgeInput> cycle{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  CHECK_THROWS_WITH_AS(static_cast<void>(WeightedTree::build(cycle, 0)),
                       doctest::Contains("CycleDetected"), Error);

  std::vector<EdgeInput> split{{0, 1, 1}, {2, 3, 1}};
  CHECK_THROWS_WITH_AS(static_cast<void>(WeightedTree::build(split, 0)),
                       doctest::Contains("Disconnected"), Error);

  std::vector<EdgeInput> negative{{0, 1, -2}};
  CHECK_THROWS_WITH_AS(static_cast<void>(WeightedTree::build(negative, 0)),
                       doctest::Contains("NegativeLength"), Error);

  std::vector<EdgeInput> ok{{0, 1, 1}};
  WeightedTree t = WeightedTree::build(ok, 0);
  CHECK_THROWS_AS(static_cast<void>(t.distance(0, 7)), Error);
}

TEST_CASE("distance agrees with path-walk oracle on random trees") {
  std::mt19937_64 rng(20240701);
  for (int round = 0; round < 25; ++round) {
    int n = std::uniform_int_distribution<int>(2, 50)(rng);
    std::vector<EdgeInput> edges;
    for (int v = 1; v < n; ++v) {
      int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
      long long len = std::uniform_int_distribution<long long>(0, 100)(rng);
      edges.push_back({parent, v, len});
    }
    WeightedTree t = WeightedTree::build(edges, 0);
    for (VertexId a = 0; a < n; ++a) {
      CHECK(t.distance(a, a) == 0);
      for (VertexId b = 0; b < n; ++b) {
        long long expected = testutil::path_walk_distance(t, a, b);
        REQUIRE(t.distance(a, b) == expected);
        REQUIRE(t.distance(b, a) == expected);
      }
    }
    // Triangle equality through the meeting point of the two root paths.
    for (int trial = 0; trial < 20; ++trial) {
      VertexId a = std::uniform_int_distribution<int>(0, n - 1)(rng);
      VertexId b = std::uniform_int_distribution<int>(0, n - 1)(rng);
      VertexId m = t.lca(a, b);
      CHECK(t.distance(a, b) == t.distance(a, m) + t.distance(m, b));
    }
  }
}

TEST_CASE("binarize splits a degree-3 star and preserves distances") {
  std::vector<EdgeInput> star{{0, 1, 3}, {0, 2, 4}, {0, 3, 5}};
  WeightedTree t = WeightedTree::build(star, 0);
  std::vector<VertexId> sites{1, 2, 3};
  BinarizeResult bin = binarize(t, sites);
  CHECK(bin.tree.is_full_binary());
  for (size_t i = 0; i < sites.size(); ++i) {
    for (size_t j = 0; j < sites.size(); ++j) {
      CHECK(bin.tree.distance(bin.site_vertex[i], bin.site_vertex[j]) ==
            t.distance(sites[i], sites[j]));
    }
  }
}

TEST_CASE("binarize gives colocated sites their own vertices") {
  std::vector<EdgeInput> edge{{0, 1, 7}};
  WeightedTree t = WeightedTree::build(edge, 0);
  std::vector<VertexId> sites{1, 1, 1};  // two users and a facility share vertex 1
  BinarizeResult bin = binarize(t, sites);
  CHECK(bin.tree.is_full_binary());
  CHECK(bin.site_vertex[0] != bin.site_vertex[1]);
  CHECK(bin.site_vertex[1] != bin.site_vertex[2]);
  CHECK(bin.site_vertex[0] != bin.site_vertex[2]);
  for (size_t i = 0; i < sites.size(); ++i) {
    for (size_t j = 0; j < sites.size(); ++j) {
      CHECK(bin.tree.distance(bin.site_vertex[i], bin.site_vertex[j]) == 0);
    }
  }
}

TEST_CASE("binarize is the identity on a binary tree with leaf sites") {
  std::vector<EdgeInput> edges{{0, 1, 2}, {0, 2, 3}, {1, 3, 1}, {1, 4, 6}};
  WeightedTree t = WeightedTree::build(edges, 0);
  std::vector<VertexId> sites{2, 3, 4};
  BinarizeResult bin = binarize(t, sites);
  CHECK(bin.tree.vertex_count() == t.vertex_count());
  CHECK(bin.site_vertex == sites);
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    CHECK(bin.tree.parent(v) == t.parent(v));
    CHECK(bin.tree.edge_length_to_parent(v) == t.edge_length_to_parent(v));
  }
}

TEST_CASE("binarize keeps random site distances exact and grows linearly") {
  std::mt19937_64 rng(987);
  for (int round = 0; round < 20; ++round) {
    int n = std::uniform_int_distribution<int>(1, 30)(rng);
    std::vector<EdgeInput> edges;
    for (int v = 1; v < n; ++v) {
      edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v,
                       std::uniform_int_distribution<long long>(0, 50)(rng)});
    }
    WeightedTree t = WeightedTree::build(edges, 0);
    int site_count = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<VertexId> sites;
    for (int i = 0; i < site_count; ++i) {
      sites.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
    }
    BinarizeResult bin = binarize(t, sites);
    REQUIRE(bin.tree.is_full_binary());
    CHECK(bin.tree.vertex_count() <= 4 * (n + site_count));
    for (size_t i = 0; i < sites.size(); ++i) {
      for (size_t j = 0; j < sites.size(); ++j) {
        REQUIRE(bin.tree.distance(bin.site_vertex[i], bin.site_vertex[j]) ==
                t.distance(sites[i], sites[j]));
      }
    }
  }
}

TEST_CASE("round_lengths floors root distances onto the grid") {
  std::vector<EdgeInput> path{{0, 1, 5}, {1, 2, 3}};
  WeightedTree t = WeightedTree::build(path, 0);
  RoundedTree r = round_lengths(t, Rational(4));
  CHECK(r.rounded_root_distance(1) == 1);  // floor(5/4)
  CHECK(r.rounded_root_distance(2) == 2);  // floor(8/4)
  CHECK(r.rounded_edge_length(1) == 1);
  CHECK(r.rounded_edge_length(2) == 1);

  RoundedTree coarse = round_lengths(t, Rational(100));
  for (VertexId v = 0; v < t.vertex_count(); ++v) CHECK(coarse.rounded_edge_length(v) == 0);

  CHECK_THROWS_AS(round_lengths(t, Rational(0)), Error);
  CHECK_THROWS_AS(round_lengths(t, Rational(-1, 2)), Error);
}

TEST_CASE("rounding keeps every pair within two grid units") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 30; ++round) {
    int n = std::uniform_int_distribution<int>(2, 50)(rng);
    std::vector<EdgeInput> edges;
    for (int v = 1; v < n; ++v) {
      edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v,
                       std::uniform_int_distribution<long long>(0, 1'000'000)(rng)});
    }
    WeightedTree t = WeightedTree::build(edges, 0);
    for (int k = 0; k < 5; ++k) {
      Rational unit(std::uniform_int_distribution<long long>(1, 2'000'000)(rng),
                    std::uniform_int_distribution<long long>(1, 1000)(rng));
      RoundedTree rt = round_lengths(t, unit);
      for (VertexId v = 0; v < n; ++v) {
        REQUIRE(rt.rounded_root_distance(v) == unit.floor_div(t.root_distance(v)));
        for (VertexId w = v; w < n; ++w) {
          Rational real(t.distance(v, w));
          Rational snapped = Rational(rt.rounded_distance(v, w)) * unit;
          REQUIRE(real - Rational(2) * unit <= snapped);
          REQUIRE(snapped <= real + Rational(2) * unit);
        }
      }
    }
  }
}
