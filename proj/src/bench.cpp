#include "rgather/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "rgather/brute.hpp"
#include "rgather/generate.hpp"
#include "rgather/minsum.hpp"
#include "rgather/proximity.hpp"
#include "rgather/ptas.hpp"

namespace rgather {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct PoolSpec {
  uint64_t seed = 1;
  int count = 100;
  int max_vertices = 12;
  int max_users = 8;
  int max_facilities = 4;
  int max_r = 3;
  long long max_len = 20;
  long long max_open_cost = 0;
};

std::vector<Instance> make_pool(const PoolSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<Instance> pool;
  pool.reserve(spec.count);
  while (static_cast<int>(pool.size()) < spec.count) {
    GenParams p;
    p.seed = rng();
    p.r = std::uniform_int_distribution<int>(1, spec.max_r)(rng);
    p.n_users = std::uniform_int_distribution<int>(p.r, spec.max_users)(rng);
    p.n_facilities = std::uniform_int_distribution<int>(1, spec.max_facilities)(rng);
    int min_v = p.n_users + p.n_facilities;
    p.n_vertices =
        std::uniform_int_distribution<int>(min_v, std::max(spec.max_vertices, min_v))(rng);
    p.max_len = spec.max_len;
    p.max_open_cost = spec.max_open_cost;
    p.shape = static_cast<TreeShape>(std::uniform_int_distribution<int>(0, 3)(rng));
    pool.push_back(generate(p));
  }
  return pool;
}

struct Tally {
  long long checks = 0;
  long long failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
  std::string summary() const {
    std::ostringstream out;
    out << checks - failures << "/" << checks << " checks";
    if (failures > 0) out << "; first failure: " << first_failure;
    return out.str();
  }
};

// 1. Rounding sandwich at scale: d - 2t <= d' * t <= d + 2t for every pair.
CriterionResult criterion_rounding() {
  auto start = Clock::now();
  Tally tally;
  std::mt19937_64 rng(90101);
  for (int round = 0; round < 200; ++round) {
    int n = std::uniform_int_distribution<int>(2, 50)(rng);
    std::vector<EdgeInput> edges;
    for (int v = 1; v < n; ++v) {
      edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v,
                       std::uniform_int_distribution<long long>(0, 1'000'000)(rng)});
    }
    WeightedTree tree = WeightedTree::build(edges, 0);
    for (int k = 0; k < 5; ++k) {
      Rational unit(std::uniform_int_distribution<long long>(1, 3'000'000)(rng),
                    std::uniform_int_distribution<long long>(1, 997)(rng));
      RoundedTree rounded(tree, unit);
      Rational two_units = Rational(2) * unit;
      for (VertexId v = 0; v < n; ++v) {
        for (VertexId w = v; w < n; ++w) {
          Rational real(tree.distance(v, w));
          Rational snapped = Rational(rounded.rounded_distance(v, w)) * unit;
          bool ok = real - two_units <= snapped && snapped <= real + two_units;
          tally.check(ok, "tree round " + std::to_string(round) + " pair " + std::to_string(v) +
                              "," + std::to_string(w));
        }
      }
    }
  }
  double ms = ms_since(start);
  return {1, "rounding sandwich", tally.failures == 0 && ms < 30'000,
          tally.summary(), ms};
}

// 2. Decision oracle contract swept over every candidate threshold.
CriterionResult criterion_oracle() {
  auto start = Clock::now();
  Tally tally;
  PoolSpec spec;
  spec.seed = 90202;
  spec.count = 100;
  for (const Instance& inst : make_pool(spec)) {
    auto opt = brute_minmax(inst);
    if (!opt) {
      tally.check(false, "pool instance unexpectedly infeasible");
      continue;
    }
    Instance normal = normalized(inst);
    for (Rational delta : {Rational(1), Rational(1, 2)}) {
      DecisionOracle oracle(normal, delta);
      bool seen_yes = false;
      for (long long b : inst.candidate_distances()) {
        if (b <= 0) continue;
        std::optional<Solution> res = oracle.decide(Rational(b));
        std::string tag = "b=" + std::to_string(b) + " delta=" + delta.str();
        if (res) {
          tally.check(check_feasible(inst, *res, VariantSpec::plain()).empty(),
                      tag + " certificate infeasible");
          tally.check(Rational(evaluate(inst, *res).minmax_cost) <=
                          (Rational(1) + delta) * Rational(b),
                      tag + " certificate over (1+delta)b");
          seen_yes = true;
        } else {
          tally.check(opt->cost > b, tag + " NO despite OPT <= b");
          tally.check(!seen_yes, tag + " YES->NO flip");
        }
      }
    }
  }
  double ms = ms_since(start);
  return {2, "oracle contract + monotonicity", tally.failures == 0 && ms < 600'000,
          tally.summary(), ms};
}

// 3. End-to-end PTAS ratio against the brute optimum.
CriterionResult criterion_ptas() {
  auto start = Clock::now();
  Tally tally;
  PoolSpec spec;
  spec.seed = 90202;  // same pool as the oracle criterion
  spec.count = 100;
  int landed = 0;
  for (const Instance& inst : make_pool(spec)) {
    auto opt = brute_minmax(inst);
    if (!opt) {
      tally.check(false, "pool instance unexpectedly infeasible");
      continue;
    }
    for (Rational eps : {Rational(1), Rational(1, 2)}) {
      PtasTrace trace;
      Solution sol = ptas_solve(inst, eps, &trace);
      long long cost = evaluate(inst, sol).minmax_cost;
      std::string tag = "eps=" + eps.str() + " opt=" + std::to_string(opt->cost);
      tally.check(check_feasible(inst, sol, VariantSpec::plain()).empty(),
                  tag + " solution infeasible");
      tally.check(Rational(cost) <= (Rational(1) + eps) * Rational(opt->cost),
                  tag + " ratio above 1+eps");
      if (trace.final_candidate == opt->cost) {
        ++landed;
        tally.check(cost == opt->cost, tag + " landed on OPT but cost " + std::to_string(cost));
      }
    }
  }
  double ms = ms_since(start);
  std::string detail = tally.summary() + "; landed-on-OPT cases: " + std::to_string(landed);
  return {3, "ptas ratio", tally.failures == 0 && ms < 600'000, detail, ms};
}

// 4. Outlier and cap variants against the extended brute.
CriterionResult criterion_variants() {
  auto start = Clock::now();
  Tally tally;
  PoolSpec spec;
  spec.seed = 90404;
  spec.count = 50;
  for (const Instance& inst : make_pool(spec)) {
    Solution plain = ptas_solve(inst, Rational(1, 2));
    long long plain_cost = evaluate(inst, plain).minmax_cost;

    for (Rational alpha : {Rational(0), Rational(1, 4)}) {
      int budget = static_cast<int>((alpha * Rational(inst.user_count())).floor());
      if (inst.user_count() - budget < inst.r()) continue;
      BruteConfig cfg;
      cfg.outlier_budget = budget;
      auto ref = brute_variants(inst, cfg);
      if (!ref) {
        tally.check(false, "outlier brute infeasible");
        continue;
      }
      for (Rational eps : {Rational(1), Rational(1, 2)}) {
        Solution sol = ptas_solve_outliers(inst, eps, alpha);
        std::string tag = "alpha=" + alpha.str() + " eps=" + eps.str();
        tally.check(check_feasible(inst, sol, VariantSpec::outliers(budget)).empty(),
                    tag + " infeasible");
        tally.check(Rational(evaluate(inst, sol).minmax_cost) <=
                        (Rational(1) + eps) * Rational(ref->cost),
                    tag + " ratio above 1+eps");
      }
      if (alpha.is_zero()) {
        Solution sol = ptas_solve_outliers(inst, Rational(1, 2), alpha);
        tally.check(evaluate(inst, sol).minmax_cost == plain_cost,
                    "alpha=0 diverged from the plain driver");
      }
    }

    for (int k : {1, 2}) {
      BruteConfig cfg;
      cfg.open_cap = k;
      auto ref = brute_variants(inst, cfg);
      if (!ref) {
        tally.check(false, "capped brute infeasible");
        continue;
      }
      for (Rational eps : {Rational(1), Rational(1, 2)}) {
        Solution sol = ptas_solve_capped(inst, eps, k);
        std::string tag = "k=" + std::to_string(k) + " eps=" + eps.str();
        tally.check(check_feasible(inst, sol, VariantSpec::capped(k)).empty(),
                    tag + " infeasible");
        tally.check(Rational(evaluate(inst, sol).minmax_cost) <=
                        (Rational(1) + eps) * Rational(ref->cost),
                    tag + " ratio above 1+eps");
      }
    }
    Solution uncapped = ptas_solve_capped(inst, Rational(1, 2), inst.facility_count());
    tally.check(evaluate(inst, uncapped).minmax_cost == plain_cost,
                "k=|F| diverged from the plain driver");
  }
  double ms = ms_since(start);
  return {4, "variant ptas", tally.failures == 0, tally.summary(), ms};
}

// 5. Exact min-sum / LBFL with the one-direction edge property.
CriterionResult criterion_minsum() {
  auto start = Clock::now();
  Tally tally;
  PoolSpec spec;
  spec.seed = 90505;
  spec.count = 100;
  spec.max_open_cost = 10;
  for (const Instance& inst : make_pool(spec)) {
    auto ref = brute_minsum(inst);
    if (!ref) {
      tally.check(false, "minsum brute infeasible");
      continue;
    }
    MinsumResult res = solve_minsum(inst);
    tally.check(res.cost == ref->cost, "minsum value " + std::to_string(res.cost) + " != brute " +
                                           std::to_string(ref->cost));
    tally.check(check_feasible(inst, res.solution, VariantSpec::plain()).empty(),
                "minsum witness infeasible");
    tally.check(evaluate(inst, res.solution).minsum_cost == res.cost,
                "minsum witness cost mismatch");

    const WeightedTree& tree = inst.tree();
    std::vector<int> up(tree.vertex_count(), 0), down(tree.vertex_count(), 0);
    for (UserId u = 0; u < inst.user_count(); ++u) {
      FacilityId f = res.solution.assignment[u];
      VertexId a = inst.user_vertex(u);
      VertexId b = inst.facility(f).vertex;
      VertexId m = tree.lca(a, b);
      for (VertexId v = a; v != m; v = tree.parent(v)) ++up[v];
      for (VertexId v = b; v != m; v = tree.parent(v)) ++down[v];
    }
    bool one_way = true;
    for (VertexId v = 0; v < tree.vertex_count(); ++v) one_way &= up[v] == 0 || down[v] == 0;
    tally.check(one_way, "an edge carries users in both directions");
  }
  double ms = ms_since(start);
  return {5, "exact min-sum / LBFL", tally.failures == 0 && ms < 120'000, tally.summary(), ms};
}

// 6. Exact proximity DP against the open-subset reference.
CriterionResult criterion_proximity() {
  auto start = Clock::now();
  Tally tally;
  PoolSpec spec;
  spec.seed = 90606;
  spec.count = 100;
  spec.max_vertices = 16;
  spec.max_users = 10;
  spec.max_facilities = 6;
  spec.max_len = 5000;
  for (const Instance& inst : make_pool(spec)) {
    for (Objective obj : {Objective::MinMax, Objective::MinSum}) {
      auto ref = proximity_brute_reference(inst, obj);
      auto res = solve_proximity(inst, obj);
      std::string tag = obj == Objective::MinMax ? "minmax" : "minsum";
      tally.check(res.has_value() == ref.has_value(), tag + " feasibility verdict mismatch");
      if (!res || !ref) continue;
      tally.check(res->cost == ref->cost, tag + " value " + std::to_string(res->cost) +
                                              " != reference " + std::to_string(ref->cost));
      tally.check(check_feasible(inst, res->solution, VariantSpec::proximity()).empty(),
                  tag + " solution violates proximity");

      // Shared-vertex property: intersecting user->facility paths end at
      // the same facility.
      const WeightedTree& tree = inst.tree();
      std::vector<std::vector<VertexId>> paths(inst.user_count());
      for (UserId u = 0; u < inst.user_count(); ++u) {
        VertexId a = inst.user_vertex(u);
        VertexId b = inst.facility(res->solution.assignment[u]).vertex;
        VertexId m = tree.lca(a, b);
        for (VertexId v = a;; v = tree.parent(v)) {
          paths[u].push_back(v);
          if (v == m) break;
        }
        for (VertexId v = b; v != m; v = tree.parent(v)) paths[u].push_back(v);
      }
      bool ok = true;
      for (UserId u = 0; u < inst.user_count() && ok; ++u) {
        for (UserId w = u + 1; w < inst.user_count() && ok; ++w) {
          if (res->solution.assignment[u] == res->solution.assignment[w]) continue;
          for (VertexId a : paths[u]) {
            if (std::find(paths[w].begin(), paths[w].end(), a) != paths[w].end()) {
              ok = false;
              break;
            }
          }
        }
      }
      tally.check(ok, tag + " disjointness of cross-facility paths violated");
    }
  }
  double ms = ms_since(start);
  return {6, "exact proximity", tally.failures == 0, tally.summary(), ms};
}

// 7. Min-sum scaling shape: |V|=2000, doubling |U| costs ~4x.
CriterionResult criterion_scaling() {
  auto start = Clock::now();
  Tally tally;
  auto timed_run = [&](int users) {
    GenParams p;
    p.seed = 90707;
    p.n_vertices = 2000;
    p.n_users = users;
    p.n_facilities = 40;
    p.r = 3;
    p.max_len = 1000;
    p.shape = TreeShape::RandomAttachment;
    Instance inst = generate(p);
    double best = -1;
    // Two timed runs, keeping the faster one, to damp scheduler noise.
    for (int rep = 0; rep < 2; ++rep) {
      auto t0 = Clock::now();
      MinsumResult res = solve_minsum(inst);
      double ms = ms_since(t0);
      if (best < 0 || ms < best) best = ms;
      if (rep == 0) {
        bool feasible = check_feasible(inst, res.solution, VariantSpec::plain()).empty();
        tally.check(feasible, "large witness infeasible");
        tally.check(evaluate(inst, res.solution).minsum_cost == res.cost,
                    "large value mismatch");
      }
    }
    return best;
  };
  double base_ms = timed_run(200);
  double doubled_ms = timed_run(400);
  double factor = doubled_ms / std::max(base_ms, 0.01);
  tally.check(base_ms < 10'000, "base run took " + std::to_string(base_ms) + " ms");
  tally.check(factor >= 2.5 && factor <= 6.0,
              "scaling factor " + std::to_string(factor) + " outside [2.5, 6]");
  double ms = ms_since(start);
  std::ostringstream detail;
  detail << tally.summary() << "; base " << base_ms << " ms, doubled " << doubled_ms
         << " ms, factor " << factor;
  return {7, "min-sum scaling", tally.failures == 0, detail.str(), ms};
}

// 8. Degenerate suite: zero optima, zero lengths, |U|=r, single facility.
CriterionResult criterion_degenerate() {
  auto start = Clock::now();
  Tally tally;

  auto run_everything = [&](const Instance& inst, const std::string& label,
                            long long expected_minmax) {
    auto opt = brute_minmax(inst);
    tally.check(opt.has_value(), label + ": brute infeasible");
    if (!opt) return;
    tally.check(opt->cost == expected_minmax, label + ": brute OPT " +
                                                  std::to_string(opt->cost) + " != expected " +
                                                  std::to_string(expected_minmax));
    for (Rational eps : {Rational(1), Rational(1, 2)}) {
      Solution sol = ptas_solve(inst, eps);
      tally.check(check_feasible(inst, sol, VariantSpec::plain()).empty(),
                  label + ": ptas solution infeasible");
      long long cost = evaluate(inst, sol).minmax_cost;
      if (expected_minmax == 0) {
        tally.check(cost == 0, label + ": ptas returned " + std::to_string(cost) + " not 0");
      } else {
        tally.check(Rational(cost) <= (Rational(1) + eps) * Rational(opt->cost),
                    label + ": ptas ratio");
      }
    }
    auto ms_ref = brute_minsum(inst);
    MinsumResult ms_res = solve_minsum(inst);
    tally.check(ms_ref && ms_res.cost == ms_ref->cost, label + ": minsum mismatch");
    tally.check(check_feasible(inst, ms_res.solution, VariantSpec::plain()).empty(),
                label + ": minsum witness infeasible");
    auto prox_ref = proximity_brute_reference(inst, Objective::MinMax);
    auto prox_res = solve_proximity(inst, Objective::MinMax);
    tally.check(prox_ref.has_value() == prox_res.has_value(),
                label + ": proximity verdict mismatch");
    if (prox_ref && prox_res) {
      tally.check(prox_ref->cost == prox_res->cost, label + ": proximity cost mismatch");
    }
  };

  {
    // Users stacked on facility vertices: optimum 0.
    WeightedTree tree = WeightedTree::build(
        std::vector<EdgeInput>{{0, 1, 7}, {0, 2, 9}}, 0);
    Instance inst(std::move(tree), {1, 1, 2, 2}, {{1, 0}, {2, 0}}, 2);
    run_everything(inst, "colocated", 0);
  }
  {
    // Every edge has length zero; any assignment costs nothing.
    WeightedTree tree = WeightedTree::build(
        std::vector<EdgeInput>{{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {1, 4, 0}}, 0);
    Instance inst(std::move(tree), {0, 2, 4}, {{3, 0}}, 3);
    run_everything(inst, "zero-lengths", 0);
  }
  {
    // Exactly r users: one cluster is forced.
    WeightedTree tree = WeightedTree::build(
        std::vector<EdgeInput>{{0, 1, 4}, {0, 2, 6}, {0, 3, 1}, {3, 4, 2}}, 0);
    Instance inst(std::move(tree), {1, 2, 4}, {{0, 0}, {4, 0}}, 3);
    // best single cluster: open facility at vertex 4: distances 7, 9, 0.
    run_everything(inst, "|U|=r", 6);  // facility 0: distances 4, 6, 3
  }
  {
    // Single facility: the PTAS must land exactly on the max distance.
    WeightedTree tree = WeightedTree::build(
        std::vector<EdgeInput>{{0, 1, 1}, {0, 2, 2}, {0, 3, 3}}, 0);
    Instance inst(std::move(tree), {1, 2, 3}, {{0, 0}}, 3);
    run_everything(inst, "single-facility", 3);
    Solution sol = ptas_solve(inst, Rational(1));
    tally.check(evaluate(inst, sol).minmax_cost == 3, "single-facility: not exact");
  }

  double ms = ms_since(start);
  return {8, "degenerate suite", tally.failures == 0, tally.summary(), ms};
}

}  // namespace

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return criterion_rounding();
    case 2: return criterion_oracle();
    case 3: return criterion_ptas();
    case 4: return criterion_variants();
    case 5: return criterion_minsum();
    case 6: return criterion_proximity();
    case 7: return criterion_scaling();
    case 8: return criterion_degenerate();
    default: fail(Errc::InvalidParams, "criterion id must be 1..8");
  }
}

std::vector<CriterionResult> run_desk_suite(bool verbose) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= 8; ++id) {
    results.push_back(run_criterion(id));
    if (verbose) {
      const CriterionResult& r = results.back();
      std::cout << "criterion " << r.id << " (" << r.name << "): "
                << (r.pass ? "PASS" : "FAIL") << " [" << r.detail << "] "
                << r.wall_ms << " ms" << std::endl;
    }
  }
  return results;
}

}  // namespace rgather
