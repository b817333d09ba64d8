#include "rgather/ptas.hpp"

#include <algorithm>

namespace rgather {

OracleParams OracleParams::from(const Rational& b, const Rational& delta) {
  if (!b.is_positive()) fail(Errc::NonPositiveUnit, "threshold b must be positive");
  if (!delta.is_positive()) fail(Errc::NonPositiveUnit, "slack delta must be positive");
  OracleParams p;
  p.b = b;
  p.delta = delta;
  p.unit_t = b * delta / Rational(4);
  Rational k = (b + Rational(2) * p.unit_t) / p.unit_t;
  p.threshold_k = static_cast<int>(k.floor());
  return p;
}

DecisionDp::DecisionDp(const RoundedTree& rounded, const Instance& instance, int threshold_k,
                       const DecisionConfig& config)
    : rounded_(&rounded), instance_(&instance), k_(threshold_k), config_(config) {
  if (!instance.is_normal_form()) {
    fail(Errc::InvalidParams, "decision DP needs a normal-form instance");
  }
  if (instance.user_count() > 200) {
    fail(Errc::TooLarge, "decision DP is meant for small user counts");
  }
  const WeightedTree& tree = instance.tree();
  int n = tree.vertex_count();
  states_.resize(n);

  inside_census_.assign(n, DistProfile(k_ + 1));
  outside_census_.assign(n, DistProfile(k_ + 1));
  for (UserId u = 0; u < instance.user_count(); ++u) {
    VertexId uv = instance.user_vertex(u);
    for (VertexId v = 0; v < n; ++v) {
      long long rd = rounded.rounded_distance(v, uv);
      if (rd > k_) continue;
      if (tree.in_subtree(v, uv)) {
        inside_census_[v].add(static_cast<int>(rd), 1);
      } else {
        outside_census_[v].add(static_cast<int>(rd), 1);
      }
    }
  }

  for (VertexId v : tree.postorder()) {
    if (tree.children(v).empty()) {
      build_leaf(v);
    } else {
      merge(v);
    }
  }
}

std::string DecisionDp::state_key(const DistProfile& p, const DistProfile& q, int ignored,
                                 int opened) const {
  std::string key;
  key.reserve(2 * (k_ + 1) + 2);
  key += p.counts;
  key += q.counts;
  key.push_back(static_cast<char>(ignored));
  key.push_back(static_cast<char>(opened));
  return key;
}

void DecisionDp::build_leaf(VertexId v) {
  DistProfile zero(k_ + 1);
  auto& out = states_[v];

  UserId user = instance_->user_at_vertex(v);
  FacilityId fac = instance_->facility_at_vertex(v);

  if (user >= 0) {
    DistProfile p(k_ + 1);
    p.set(0, 1);
    out.emplace(state_key(p, zero, 0, 0), Trans{Trans::Kind::LeafUserPending, {}, {}, {}, {}, {}});
    if (config_.outlier_budget >= 1) {
      out.emplace(state_key(zero, zero, 1, 0),
                  Trans{Trans::Kind::LeafUserIgnored, {}, {}, {}, {}, {}});
    }
    return;
  }

  out.emplace(state_key(zero, zero, 0, 0),
              Trans{fac >= 0 ? Trans::Kind::LeafFacilityClosed : Trans::Kind::LeafEmpty,
                    {}, {}, {}, {}, {}});
  if (fac < 0) return;

  // Opening pledges a set of users this facility will serve; all of them
  // live outside this leaf, so the pledge must be a sub-multiset of the
  // outside census and total at least r.
  const DistProfile& census = outside_census_[v];
  int opened_mark = config_.open_cap >= 0 ? 1 : 0;
  DistProfile w(k_ + 1);
  auto enumerate = [&](auto&& self, int index, int total) -> void {
    if (index > k_) {
      if (total >= instance_->r()) {
        out.emplace(state_key(zero, w, 0, opened_mark),
                    Trans{Trans::Kind::LeafFacilityOpen, {}, {}, {}, {}, w});
      }
      return;
    }
    for (int c = 0; c <= census.at(index); ++c) {
      w.set(index, c);
      self(self, index + 1, total + c);
    }
    w.set(index, 0);
  };
  enumerate(enumerate, 0, 0);
}

void DecisionDp::merge(VertexId v) {
  const WeightedTree& tree = instance_->tree();
  VertexId x = tree.children(v)[0];
  VertexId y = tree.children(v)[1];
  int dx = static_cast<int>(std::min<long long>(rounded_->rounded_edge_length(x), k_ + 1));
  int dy = static_cast<int>(std::min<long long>(rounded_->rounded_edge_length(y), k_ + 1));

  struct Shifted {
    const std::string* key;
    DistProfile p, q;
    int ignored, opened;
  };
  auto shift_states = [&](VertexId child, int d) {
    std::vector<Shifted> list;
    list.reserve(states_[child].size());
    for (const auto& [key, trans] : states_[child]) {
      (void)trans;
      DistProfile p(k_ + 1), q(k_ + 1);
      p.counts = key.substr(0, k_ + 1);
      q.counts = key.substr(k_ + 1, k_ + 1);
      // A pending user pushed past K could never be served; a pledge
      // pulled below the edge length has no one left to honor it.
      if (shift_loses(p, d) || shift_loses(q, -d)) continue;
      list.push_back({&key, shift(p, d), shift(q, -d),
                      static_cast<unsigned char>(key[2 * (k_ + 1)]),
                      static_cast<unsigned char>(key[2 * (k_ + 1) + 1])});
    }
    return list;
  };
  std::vector<Shifted> xs = shift_states(x, dx);
  std::vector<Shifted> ys = shift_states(y, dy);

  const DistProfile& in_cap = inside_census_[v];
  const DistProfile& out_cap = outside_census_[v];
  auto& out = states_[v];

  DistProfile rx(k_ + 1), ry(k_ + 1);
  for (const Shifted& a : xs) {
    for (const Shifted& b : ys) {
      int ignored = a.ignored + b.ignored;
      if (config_.outlier_budget >= 0 && ignored > config_.outlier_budget) continue;
      int opened = a.opened + b.opened;
      if (config_.open_cap >= 0 && opened > config_.open_cap) continue;

      // rx matches pending users from x against pledges from y, ry the
      // mirror image; indices are distances from v, so a matched pair's
      // true rounded separation equals the facility's original pledge slot.
      auto enumerate_ry = [&](auto&& self, int index) -> void {
        if (index > k_) {
          DistProfile p(k_ + 1), q(k_ + 1);
          bool ok = true;
          for (int i = 0; i <= k_ && ok; ++i) {
            int pv = a.p.at(i) + b.p.at(i) - rx.at(i) - ry.at(i);
            int qv = a.q.at(i) + b.q.at(i) - rx.at(i) - ry.at(i);
            if (pv > in_cap.at(i) || qv > out_cap.at(i)) ok = false;
            p.set(i, pv);
            q.set(i, qv);
          }
          if (!ok) return;
          std::string key = state_key(p, q, ignored, opened);
          if (!out.contains(key)) {
            out.emplace(std::move(key),
                        Trans{Trans::Kind::Merge, *a.key, *b.key, rx, ry, {}});
          }
          return;
        }
        int cap = std::min(b.p.at(index), a.q.at(index));
        for (int c = 0; c <= cap; ++c) {
          ry.set(index, c);
          self(self, index + 1);
        }
        ry.set(index, 0);
      };
      auto enumerate_rx = [&](auto&& self, int index) -> void {
        if (index > k_) {
          enumerate_ry(enumerate_ry, 0);
          return;
        }
        int cap = std::min(a.p.at(index), b.q.at(index));
        for (int c = 0; c <= cap; ++c) {
          rx.set(index, c);
          self(self, index + 1);
        }
        rx.set(index, 0);
      };
      enumerate_rx(enumerate_rx, 0);
    }
  }
}

bool DecisionDp::root_feasible() const {
  for (const auto& [key, trans] : states_[instance_->tree().root()]) {
    (void)trans;
    if (key.compare(0, 2 * (k_ + 1), std::string(2 * (k_ + 1), '\0')) == 0) return true;
  }
  return false;
}

struct DecisionDp::Realized {
  std::vector<std::vector<UserId>> pending;
  std::vector<std::vector<FacilityId>> slots;
};

void DecisionDp::realize(VertexId v, const std::string& key, Realized& out,
                         Solution& sol) const {
  out.pending.assign(k_ + 1, {});
  out.slots.assign(k_ + 1, {});
  auto it = states_[v].find(key);
  if (it == states_[v].end()) fail(Errc::CorruptTables, "missing decision state");
  const Trans& tr = it->second;
  const WeightedTree& tree = instance_->tree();

  switch (tr.kind) {
    case Trans::Kind::LeafEmpty:
    case Trans::Kind::LeafFacilityClosed:
    case Trans::Kind::LeafUserIgnored:
      return;
    case Trans::Kind::LeafUserPending:
      out.pending[0].push_back(instance_->user_at_vertex(v));
      return;
    case Trans::Kind::LeafFacilityOpen: {
      FacilityId f = instance_->facility_at_vertex(v);
      sol.open_facilities.push_back(f);
      for (int i = 0; i <= k_; ++i) {
        for (int c = 0; c < tr.w.at(i); ++c) out.slots[i].push_back(f);
      }
      return;
    }
    case Trans::Kind::Merge:
      break;
  }

  VertexId x = tree.children(v)[0];
  VertexId y = tree.children(v)[1];
  int dx = static_cast<int>(std::min<long long>(rounded_->rounded_edge_length(x), k_ + 1));
  int dy = static_cast<int>(std::min<long long>(rounded_->rounded_edge_length(y), k_ + 1));

  Realized cx, cy;
  realize(x, tr.sx, cx, sol);
  realize(y, tr.sy, cy, sol);

  auto reindex = [&](Realized& r, int d) {
    Realized shifted;
    shifted.pending.assign(k_ + 1, {});
    shifted.slots.assign(k_ + 1, {});
    for (int i = 0; i <= k_; ++i) {
      if (!r.pending[i].empty()) {
        if (i + d > k_) fail(Errc::CorruptTables, "pending user shifted past threshold");
        shifted.pending[i + d] = std::move(r.pending[i]);
      }
      if (!r.slots[i].empty()) {
        if (i - d < 0) fail(Errc::CorruptTables, "pledge shifted below zero");
        shifted.slots[i - d] = std::move(r.slots[i]);
      }
    }
    r = std::move(shifted);
  };
  reindex(cx, dx);
  reindex(cy, dy);

  auto consume = [&](std::vector<std::vector<UserId>>& pend,
                     std::vector<std::vector<FacilityId>>& slots, const DistProfile& r) {
    for (int i = 0; i <= k_; ++i) {
      for (int c = 0; c < r.at(i); ++c) {
        if (pend[i].empty() || slots[i].empty()) {
          fail(Errc::CorruptTables, "matching ran out of users or pledges");
        }
        UserId u = pend[i].back();
        pend[i].pop_back();
        FacilityId f = slots[i].back();
        slots[i].pop_back();
        sol.assignment[u] = f;
      }
    }
  };
  consume(cx.pending, cy.slots, tr.rx);
  consume(cy.pending, cx.slots, tr.ry);

  for (int i = 0; i <= k_; ++i) {
    out.pending[i] = std::move(cx.pending[i]);
    out.pending[i].insert(out.pending[i].end(), cy.pending[i].begin(), cy.pending[i].end());
    out.slots[i] = std::move(cx.slots[i]);
    out.slots[i].insert(out.slots[i].end(), cy.slots[i].begin(), cy.slots[i].end());
  }
}

Solution DecisionDp::extract_certificate() const {
  VertexId root = instance_->tree().root();
  std::string goal;
  for (const auto& [key, trans] : states_[root]) {
    (void)trans;
    if (key.compare(0, 2 * (k_ + 1), std::string(2 * (k_ + 1), '\0')) != 0) continue;
    if (goal.empty() || key < goal) goal = key;
  }
  if (goal.empty()) fail(Errc::CorruptTables, "no feasible root state to extract");

  Solution sol;
  sol.assignment.assign(instance_->user_count(), -1);
  Realized top;
  realize(root, goal, top, sol);
  for (int i = 0; i <= k_; ++i) {
    if (!top.pending[i].empty()) fail(Errc::CorruptTables, "unmatched user at the root");
    if (!top.slots[i].empty()) fail(Errc::CorruptTables, "unhonored pledge at the root");
  }
  std::sort(sol.open_facilities.begin(), sol.open_facilities.end());
  return sol;
}

namespace {

// One rounded-DP probe; correct in isolation but not monotone in b.
std::optional<Solution> probe_once(const Instance& normal, const Rational& b,
                                   const Rational& delta, const DecisionConfig& config) {
  OracleParams params = OracleParams::from(b, delta);
  RoundedTree rounded(normal.tree(), params.unit_t);
  DecisionDp dp(rounded, normal, params.threshold_k, config);
  if (!dp.root_feasible()) return std::nullopt;
  return dp.extract_certificate();
}

void check_variant_feasible(const Instance& instance, const DecisionConfig& config) {
  int budget = std::max(0, config.outlier_budget);
  if (instance.facility_count() < 1 || instance.user_count() - budget < instance.r()) {
    fail(Errc::InfeasibleInstance, "no threshold admits a solution");
  }
}

}  // namespace

DecisionOracle::DecisionOracle(const Instance& instance, Rational delta, DecisionConfig config)
    : instance_(&instance), delta_(delta), config_(config) {
  if (!instance.is_normal_form()) {
    fail(Errc::InvalidParams, "decision oracle needs a normal-form instance");
  }
  if (!delta_.is_positive()) fail(Errc::NonPositiveUnit, "slack delta must be positive");
  check_variant_feasible(instance, config_);

  values_ = instance.candidate_distances();
  has_zero_ = !values_.empty() && values_.front() == 0;
  long long cpos = 0;
  for (long long v : values_) {
    if (v > 0) { cpos = v; break; }
  }
  zero_threshold_ = cpos == 0 ? Rational(1)
                              : Rational(cpos) / (Rational(2) * (Rational(1) + delta_));
  thresholds_.reserve(values_.size());
  for (long long v : values_) {
    thresholds_.push_back(v == 0 ? zero_threshold_ : Rational(v));
  }
  memo_.resize(values_.size());
}

std::optional<Solution> DecisionOracle::probe(size_t rung) {
  if (!memo_[rung]) {
    ++dp_runs_;
    memo_[rung] = probe_once(*instance_, thresholds_[rung], delta_, config_);
  }
  return *memo_[rung];
}

std::optional<Solution> DecisionOracle::decide(const Rational& b) {
  if (!b.is_positive()) fail(Errc::NonPositiveUnit, "threshold b must be positive");
  // Largest candidate value <= b; every rung below it is admissible.
  size_t end = values_.size();
  while (end > 0 && Rational(values_[end - 1]) > b) --end;
  for (size_t i = end; i-- > 0;) {
    std::optional<Solution> res = probe(i);
    if (res) return res;
  }
  return std::nullopt;
}

std::optional<Solution> solve_decision(const Instance& instance, const Rational& b,
                                       const Rational& delta, const DecisionConfig& config) {
  check_variant_feasible(instance, config);
  if (instance.is_normal_form()) {
    DecisionOracle oracle(instance, delta, config);
    return oracle.decide(b);
  }
  Instance normal = normalized(instance);
  DecisionOracle oracle(normal, delta, config);
  return oracle.decide(b);
}

namespace {

struct Driver {
  const Instance& normal;
  DecisionOracle& oracle;
  DecisionConfig config;
  PtasTrace* trace;

  std::optional<Solution> probe(const Rational& b) const {
    if (trace) {
      ++trace->oracle_calls;
      trace->probed.push_back(b.floor());
    }
    return oracle.decide(b);
  }
};

// Integer edge lengths make the unit grid lossless, so a DP at threshold
// c answers "is there a solution of cost <= c" exactly. The profile width
// is c+1, so this is only worth running for small thresholds.
constexpr long long kExactFinishMaxThreshold = 4096;

std::optional<Solution> exact_threshold_probe(const Instance& normal, long long threshold,
                                              const DecisionConfig& config) {
  RoundedTree unit_grid(normal.tree(), Rational(1));
  DecisionDp dp(unit_grid, normal, static_cast<int>(threshold), config);
  if (!dp.root_feasible()) return std::nullopt;
  return dp.extract_certificate();
}

// Candidate-set binary search. Certificates are exact feasible solutions,
// so a probe's answer can pull the upper index down to the certificate's
// own cost, which is always a candidate value.
Solution candidate_search(const Driver& driver) {
  const Instance& inst = driver.normal;
  std::vector<long long> cands = inst.candidate_distances();
  std::vector<long long> positive;
  for (long long c : cands) {
    if (c > 0) positive.push_back(c);
  }

  if (driver.oracle.has_zero_candidate()) {
    std::optional<Solution> zero = driver.probe(driver.oracle.zero_threshold());
    if (zero) {
      if (driver.trace) driver.trace->final_candidate = 0;
      return *zero;
    }
    if (positive.empty()) fail(Errc::CorruptTables, "oracle refused an all-zero instance");
  }

  auto index_of = [&positive](long long value) {
    auto it = std::lower_bound(positive.begin(), positive.end(), value);
    if (it == positive.end() || *it != value) {
      fail(Errc::CorruptTables, "certificate cost is not a candidate distance");
    }
    return static_cast<int>(it - positive.begin());
  };

  int lo = -1;
  int hi = static_cast<int>(positive.size()) - 1;
  std::optional<Solution> best;
  long long best_cost = 0;

  auto note_yes = [&](int probe_index, Solution cert) {
    cert = refine_certificate(inst, cert);
    long long cost = evaluate(inst, cert).minmax_cost;
    if (!best || cost < best_cost) {
      best = std::move(cert);
      best_cost = cost;
    }
    hi = std::min(probe_index, index_of(best_cost));
  };

  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    std::optional<Solution> res = driver.probe(Rational(positive[mid]));
    if (res) {
      note_yes(mid, std::move(*res));
    } else {
      lo = mid;
    }
  }
  if (!best || hi < index_of(best_cost)) {
    std::optional<Solution> res = driver.probe(Rational(positive[hi]));
    if (!res) fail(Errc::CorruptTables, "oracle refused a threshold at least the optimum");
    note_yes(hi, std::move(*res));
  }
  // Exactness finish: the surviving candidate is a certified lower bound,
  // so an exact probe there either pins the optimum or proves the search
  // stopped strictly below it.
  if (best_cost > positive[hi] && positive[hi] <= kExactFinishMaxThreshold) {
    if (std::optional<Solution> exact =
            exact_threshold_probe(inst, positive[hi], driver.config)) {
      note_yes(hi, std::move(*exact));
    }
  }
  if (driver.trace) driver.trace->final_candidate = positive[hi];
  return *best;
}

Solution ptas_with_config(const Instance& instance, const Rational& epsilon,
                          DecisionConfig config, PtasTrace* trace) {
  if (!epsilon.is_positive()) fail(Errc::InvalidParams, "epsilon must be positive");
  check_variant_feasible(instance, config);
  Rational delta = epsilon / Rational(2);
  if (instance.is_normal_form()) {
    DecisionOracle oracle(instance, delta, config);
    return candidate_search({instance, oracle, config, trace});
  }
  Instance normal = normalized(instance);
  DecisionOracle oracle(normal, delta, config);
  return candidate_search({normal, oracle, config, trace});
}

}  // namespace

namespace {

// Quota matching: can every kept user reach an open facility within `c`
// such that each open facility serves at least r users? Edmonds-Karp on
// the tiny bipartite network; facility->sink capacities start at r and
// are lifted afterwards, which never drains a satisfied quota.
class QuotaMatcher {
 public:
  QuotaMatcher(const Instance& inst, const std::vector<FacilityId>& open,
               const std::vector<UserId>& kept)
      : inst_(inst), open_(open), kept_(kept) {
    dist_.assign(kept_.size(), std::vector<long long>(open_.size()));
    for (size_t u = 0; u < kept_.size(); ++u) {
      for (size_t f = 0; f < open_.size(); ++f) {
        dist_[u][f] = inst.user_facility_distance(kept_[u], open_[f]);
      }
    }
  }

  std::optional<std::vector<int>> match_within(long long c) {
    int nu = static_cast<int>(kept_.size());
    int nf = static_cast<int>(open_.size());
    int source = nu + nf, sink = source + 1, nodes = sink + 1;
    std::vector<std::vector<int>> cap(nodes, std::vector<int>(nodes, 0));
    for (int u = 0; u < nu; ++u) {
      cap[source][u] = 1;
      for (int f = 0; f < nf; ++f) {
        if (dist_[u][f] <= c) cap[u][nu + f] = 1;
      }
    }
    for (int f = 0; f < nf; ++f) cap[nu + f][sink] = inst_.r();

    auto augment = [&]() -> int {
      std::vector<int> prev(nodes, -1);
      prev[source] = source;
      std::vector<int> queue{source};
      for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w = 0; w < nodes; ++w) {
          if (prev[w] < 0 && cap[v][w] > 0) {
            prev[w] = v;
            if (w == sink) {
              for (int z = sink; z != source; z = prev[z]) {
                --cap[prev[z]][z];
                ++cap[z][prev[z]];
              }
              return 1;
            }
            queue.push_back(w);
          }
        }
      }
      return 0;
    };

    int flow = 0;
    while (augment()) ++flow;
    if (flow < static_cast<long long>(nf) * inst_.r()) return std::nullopt;
    for (int f = 0; f < nf; ++f) cap[nu + f][sink] += nu;  // lift quotas
    while (augment()) ++flow;
    if (flow != nu) return std::nullopt;

    std::vector<int> assignment(nu, -1);
    for (int u = 0; u < nu; ++u) {
      for (int f = 0; f < nf; ++f) {
        // residual capacity on the back edge marks a used pairing
        if (dist_[u][f] <= c && cap[nu + f][u] > 0) assignment[u] = f;
      }
    }
    return assignment;
  }

  const std::vector<std::vector<long long>>& distances() const { return dist_; }

 private:
  const Instance& inst_;
  std::vector<FacilityId> open_;
  std::vector<UserId> kept_;
  std::vector<std::vector<long long>> dist_;
};

}  // namespace

Solution refine_certificate(const Instance& instance, const Solution& certificate) {
  std::vector<UserId> kept;
  for (UserId u = 0; u < instance.user_count(); ++u) {
    if (certificate.assignment[u] >= 0) kept.push_back(u);
  }
  if (kept.empty() || certificate.open_facilities.empty()) return certificate;

  QuotaMatcher matcher(instance, certificate.open_facilities, kept);
  std::vector<long long> thresholds;
  for (const auto& row : matcher.distances()) {
    for (long long d : row) thresholds.push_back(d);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  long long current = evaluate(instance, certificate).minmax_cost;
  int lo = 0;
  int hi = static_cast<int>(std::lower_bound(thresholds.begin(), thresholds.end(), current) -
                            thresholds.begin());
  std::optional<std::vector<int>> best;  // certificate itself feasible at `current`
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    std::optional<std::vector<int>> res = matcher.match_within(thresholds[mid]);
    if (res) {
      best = std::move(res);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best) return certificate;

  Solution refined = certificate;
  for (size_t i = 0; i < kept.size(); ++i) {
    refined.assignment[kept[i]] = certificate.open_facilities[(*best)[i]];
  }
  return refined;
}

std::pair<long long, long long> initial_bounds(const Instance& instance) {
  if (!instance.structurally_feasible()) {
    fail(Errc::InfeasibleInstance, "need |U| >= r and at least one facility");
  }
  long long lower = 0;
  for (UserId u = 0; u < instance.user_count(); ++u) {
    long long nearest = -1;
    for (FacilityId f = 0; f < instance.facility_count(); ++f) {
      long long d = instance.user_facility_distance(u, f);
      if (nearest < 0 || d < nearest) nearest = d;
    }
    lower = std::max(lower, nearest);
  }
  long long upper = -1;
  for (FacilityId f = 0; f < instance.facility_count(); ++f) {
    long long farthest = 0;
    for (UserId u = 0; u < instance.user_count(); ++u) {
      farthest = std::max(farthest, instance.user_facility_distance(u, f));
    }
    if (upper < 0 || farthest < upper) upper = farthest;
  }
  return {lower, upper};
}

Solution ptas_solve(const Instance& instance, const Rational& epsilon, PtasTrace* trace) {
  return ptas_with_config(instance, epsilon, DecisionConfig{}, trace);
}

Solution ptas_solve_bracket(const Instance& instance, const Rational& epsilon,
                            PtasTrace* trace) {
  if (!epsilon.is_positive()) fail(Errc::InvalidParams, "epsilon must be positive");
  DecisionConfig config{};
  check_variant_feasible(instance, config);
  const Instance& normal_ref = instance;
  std::optional<Instance> owned;
  if (!instance.is_normal_form()) owned.emplace(normalized(instance));
  const Instance& normal = owned ? *owned : normal_ref;

  // The halving analysis is only tight for moderate epsilon; clamping
  // keeps the (1+epsilon) promise for larger values too.
  Rational eps_eff = epsilon < Rational(3) ? epsilon : Rational(3);
  DecisionOracle oracle(normal, eps_eff / Rational(2), config);
  Driver driver{normal, oracle, config, trace};

  std::vector<long long> cands = normal.candidate_distances();
  long long cpos = 0;
  for (long long c : cands) {
    if (c > 0) { cpos = c; break; }
  }
  if (oracle.has_zero_candidate()) {
    std::optional<Solution> zero = driver.probe(oracle.zero_threshold());
    if (zero) {
      if (trace) trace->final_candidate = 0;
      return *zero;
    }
    if (cpos == 0) fail(Errc::CorruptTables, "oracle refused an all-zero instance");
  }

  auto [lower, upper] = initial_bounds(normal);
  Rational b1 = Rational(std::max(lower, cpos));
  Rational b2(upper);
  Rational threshold = eps_eff / Rational(9);
  int guard = 0;
  while (b2 - b1 > threshold * b2) {
    if (++guard > 300) fail(Errc::CorruptTables, "bracket search failed to converge");
    Rational mid = (b1 + b2) / Rational(2);
    if (driver.probe(mid)) {
      b2 = mid;
    } else {
      b1 = mid;
    }
  }
  std::optional<Solution> cert = driver.probe(b2);
  if (!cert) fail(Errc::CorruptTables, "final bracket threshold lost its certificate");
  if (trace) trace->final_candidate = b2.floor();
  return refine_certificate(normal, *cert);
}

Solution ptas_solve_outliers(const Instance& instance, const Rational& epsilon,
                             const Rational& alpha, PtasTrace* trace) {
  if (alpha < Rational(0) || !(alpha < Rational(1))) {
    fail(Errc::InvalidParams, "outlier fraction must lie in [0, 1)");
  }
  DecisionConfig config;
  config.outlier_budget = static_cast<int>((alpha * Rational(instance.user_count())).floor());
  return ptas_with_config(instance, epsilon, config, trace);
}

Solution ptas_solve_capped(const Instance& instance, const Rational& epsilon, int max_open,
                           PtasTrace* trace) {
  if (max_open < 1) fail(Errc::InvalidParams, "facility cap must be at least 1");
  DecisionConfig config;
  // A cap covering every facility is no constraint; dropping it keeps the
  // run identical to the plain solver.
  if (max_open < instance.facility_count()) config.open_cap = max_open;
  return ptas_with_config(instance, epsilon, config, trace);
}

}  // namespace rgather
