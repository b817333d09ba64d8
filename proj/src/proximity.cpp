#include "rgather/proximity.hpp"

#include <algorithm>

#include "rgather/minsum.hpp"  // kInfCost

namespace rgather {

namespace {

// Anchor DP over (vertex, facility, committed count). The anchor of a
// vertex is the nearest open facility seen from it; commitments to the
// anchor are counted up to a cap. Every other facility opened strictly
// inside the subtree must already have its full quota of r users from
// inside, which is what the close-out transitions check.
class ProximityDp {
 public:
  ProximityDp(const Instance& inst, Objective objective, const ProximityOptions& options)
      : inst_(inst), tree_(inst.tree()), objective_(objective) {
    cap_ = options.commit_cap < 0 ? inst.r() : options.commit_cap;
    if (cap_ < inst.r()) fail(Errc::InvalidParams, "commit cap below r");
    naive_ = options.naive_transitions;
    nf_ = inst.facility_count();
    nv_ = tree_.vertex_count();

    dist_.assign(nf_, std::vector<long long>(nv_, 0));
    for (FacilityId f = 0; f < nf_; ++f) {
      for (VertexId v = 0; v < nv_; ++v) dist_[f][v] = tree_.distance(v, inst.facility(f).vertex);
    }

    run();
  }

  std::optional<ProximityResult> extract() const;

 private:
  struct Choice {
    enum class Kind : uint8_t { None, Leaf, BothKeep, KeepXCloseY, KeepYCloseX, CloseBoth };
    Kind kind = Kind::None;
    int16_t k = 0, l = 0;        // child commitments (BothKeep / Keep*)
    FacilityId fx = -1, fy = -1;  // closed-out anchors
  };

  long long combine(long long a, long long b) const {
    if (a >= kInfCost || b >= kInfCost) return kInfCost;
    return objective_ == Objective::MinMax ? std::max(a, b) : a + b;
  }

  long long vertex_cost(VertexId v, FacilityId f) const {
    int uv = inst_.users_at(v);
    if (objective_ == Objective::MinMax) return uv > 0 ? dist_[f][v] : 0;
    return static_cast<long long>(uv) * dist_[f][v];
  }

  // Strict "nearer from z" order with the id tie-break.
  bool prefers(VertexId z, FacilityId a, FacilityId b) const {
    if (dist_[a][z] != dist_[b][z]) return dist_[a][z] < dist_[b][z];
    return a < b;
  }

  long long& at(VertexId v, FacilityId f, int t) { return table_[v][f * (cap_ + 1) + t]; }
  long long at(VertexId v, FacilityId f, int t) const { return table_[v][f * (cap_ + 1) + t]; }
  Choice& choice(VertexId v, FacilityId f, int t) { return choices_[v][f * (cap_ + 1) + t]; }
  const Choice& choice(VertexId v, FacilityId f, int t) const {
    return choices_[v][f * (cap_ + 1) + t];
  }

  void run();
  void merge_vertex(VertexId v, VertexId x, VertexId y);
  void replay(VertexId v, FacilityId f, int t, Solution& sol, std::vector<char>& open) const;

  const Instance& inst_;
  const WeightedTree& tree_;
  Objective objective_;
  int cap_ = 0;
  bool naive_ = false;
  int nf_ = 0, nv_ = 0;
  std::vector<std::vector<long long>> dist_;
  std::vector<std::vector<long long>> table_;
  std::vector<std::vector<Choice>> choices_;
};

void ProximityDp::run() {
  table_.assign(nv_, std::vector<long long>(static_cast<size_t>(nf_) * (cap_ + 1), kInfCost));
  choices_.assign(nv_, std::vector<Choice>(static_cast<size_t>(nf_) * (cap_ + 1)));

  for (VertexId v : tree_.postorder()) {
    const auto& kids = tree_.children(v);
    if (kids.empty()) {
      int uv = inst_.users_at(v);
      for (FacilityId f = 0; f < nf_; ++f) {
        long long c = vertex_cost(v, f);
        for (int t = 0; t <= std::min(uv, cap_); ++t) {
          at(v, f, t) = c;
          choice(v, f, t) = {Choice::Kind::Leaf, 0, 0, -1, -1};
        }
      }
    } else {
      merge_vertex(v, kids[0], kids[1]);
    }
    // "committed at least t" weakens as t drops; keep tables monotone so
    // suffix minima collapse to single lookups.
    for (FacilityId f = 0; f < nf_; ++f) {
      for (int t = cap_ - 1; t >= 0; --t) {
        if (at(v, f, t + 1) < at(v, f, t)) {
          at(v, f, t) = at(v, f, t + 1);
          choice(v, f, t) = choice(v, f, t + 1);
        }
      }
    }
  }
}

void ProximityDp::merge_vertex(VertexId v, VertexId x, VertexId y) {
  int uv = inst_.users_at(v);

  // close_child[f] = cheapest way for the child's subtree to wrap up its
  // own anchor f' at full quota, consistently with f staying the nearest
  // open facility from v. The anchor being closed must live inside the
  // child's subtree; both endpoints of the edge have to agree on the
  // preference order between f and f'.
  auto closing_min = [&](VertexId child, FacilityId f, FacilityId* arg) -> long long {
    long long best = kInfCost;
    for (FacilityId fp = 0; fp < nf_; ++fp) {
      if (fp == f) continue;
      if (!tree_.in_subtree(child, inst_.facility(fp).vertex)) continue;
      if (!prefers(v, f, fp)) continue;
      if (!prefers(child, fp, f)) continue;
      long long val = at(child, fp, inst_.r());
      if (val < best) { best = val; if (arg) *arg = fp; }
    }
    return best;
  };

  for (FacilityId f = 0; f < nf_; ++f) {
    long long cost_v = vertex_cost(v, f);
    FacilityId close_x_arg = -1, close_y_arg = -1;
    long long close_x = kInfCost, close_y = kInfCost;
    if (!naive_) {
      close_x = closing_min(x, f, &close_x_arg);
      close_y = closing_min(y, f, &close_y_arg);
    }

    for (int t = 0; t <= cap_; ++t) {
      long long best = kInfCost;
      Choice best_choice;

      // Both children keep the anchor: commitments add up with the users
      // on v itself. Tables are monotone, so the cheapest partner for a
      // given k is the smallest admissible l.
      for (int k = 0; k <= cap_; ++k) {
        int need = t - uv - k;
        if (need > cap_) continue;
        int l = std::max(0, need);
        long long val = combine(combine(at(x, f, k), at(y, f, l)), cost_v);
        if (val < best) {
          best = val;
          best_choice = {Choice::Kind::BothKeep, static_cast<int16_t>(k),
                         static_cast<int16_t>(l), -1, -1};
        }
        if (naive_) {
          for (int ll = l; ll <= cap_; ++ll) {
            long long v2 = combine(combine(at(x, f, k), at(y, f, ll)), cost_v);
            if (v2 < best) {
              best = v2;
              best_choice = {Choice::Kind::BothKeep, static_cast<int16_t>(k),
                             static_cast<int16_t>(ll), -1, -1};
            }
          }
        }
      }

      // One child keeps the anchor, the other closes out its own.
      int keep = std::max(0, t - uv);
      if (keep <= cap_) {
        if (!naive_) {
          long long val = combine(combine(at(x, f, keep), close_y), cost_v);
          if (val < best) {
            best = val;
            best_choice = {Choice::Kind::KeepXCloseY, static_cast<int16_t>(keep), 0, -1,
                           close_y_arg};
          }
          val = combine(combine(close_x, at(y, f, keep)), cost_v);
          if (val < best) {
            best = val;
            best_choice = {Choice::Kind::KeepYCloseX, 0, static_cast<int16_t>(keep),
                           close_x_arg, -1};
          }
        } else {
          for (FacilityId fp = 0; fp < nf_; ++fp) {
            if (fp == f) continue;
            if (tree_.in_subtree(y, inst_.facility(fp).vertex) && prefers(v, f, fp) &&
                prefers(y, fp, f)) {
              long long val =
                  combine(combine(at(x, f, keep), at(y, fp, inst_.r())), cost_v);
              if (val < best) {
                best = val;
                best_choice = {Choice::Kind::KeepXCloseY, static_cast<int16_t>(keep), 0, -1, fp};
              }
            }
            if (tree_.in_subtree(x, inst_.facility(fp).vertex) && prefers(v, f, fp) &&
                prefers(x, fp, f)) {
              long long val =
                  combine(combine(at(x, fp, inst_.r()), at(y, f, keep)), cost_v);
              if (val < best) {
                best = val;
                best_choice = {Choice::Kind::KeepYCloseX, 0, static_cast<int16_t>(keep), fp, -1};
              }
            }
          }
        }
      }

      // Both children close out; only the users on v feed the anchor.
      if (t <= uv) {
        if (!naive_) {
          long long val = combine(combine(close_x, close_y), cost_v);
          if (val < best) {
            best = val;
            best_choice = {Choice::Kind::CloseBoth, 0, 0, close_x_arg, close_y_arg};
          }
        } else {
          for (FacilityId fx = 0; fx < nf_; ++fx) {
            if (fx == f || !tree_.in_subtree(x, inst_.facility(fx).vertex)) continue;
            if (!prefers(v, f, fx) || !prefers(x, fx, f)) continue;
            for (FacilityId fy = 0; fy < nf_; ++fy) {
              if (fy == f || !tree_.in_subtree(y, inst_.facility(fy).vertex)) continue;
              if (!prefers(v, f, fy) || !prefers(y, fy, f)) continue;
              long long val =
                  combine(combine(at(x, fx, inst_.r()), at(y, fy, inst_.r())), cost_v);
              if (val < best) {
                best = val;
                best_choice = {Choice::Kind::CloseBoth, 0, 0, fx, fy};
              }
            }
          }
        }
      }

      if (best < kInfCost) {
        at(v, f, t) = best;
        choice(v, f, t) = best_choice;
      }
    }
  }
}

void ProximityDp::replay(VertexId v, FacilityId f, int t, Solution& sol,
                         std::vector<char>& open) const {
  open[f] = 1;
  UserId user = inst_.user_at_vertex(v);
  if (inst_.users_at(v) > 1) fail(Errc::CorruptTables, "replay needs one user per vertex");
  if (user >= 0) sol.assignment[user] = f;

  const Choice& c = choice(v, f, t);
  const auto& kids = tree_.children(v);
  switch (c.kind) {
    case Choice::Kind::Leaf:
      return;
    case Choice::Kind::BothKeep:
      replay(kids[0], f, c.k, sol, open);
      replay(kids[1], f, c.l, sol, open);
      return;
    case Choice::Kind::KeepXCloseY:
      replay(kids[0], f, c.k, sol, open);
      replay(kids[1], c.fy, inst_.r(), sol, open);
      return;
    case Choice::Kind::KeepYCloseX:
      replay(kids[0], c.fx, inst_.r(), sol, open);
      replay(kids[1], f, c.l, sol, open);
      return;
    case Choice::Kind::CloseBoth:
      replay(kids[0], c.fx, inst_.r(), sol, open);
      replay(kids[1], c.fy, inst_.r(), sol, open);
      return;
    case Choice::Kind::None:
      fail(Errc::CorruptTables, "replay reached an unset choice");
  }
}

std::optional<ProximityResult> ProximityDp::extract() const {
  FacilityId best_f = -1;
  long long best = kInfCost;
  for (FacilityId f = 0; f < nf_; ++f) {
    long long val = at(tree_.root(), f, inst_.r());
    if (val < best) { best = val; best_f = f; }
  }
  if (best_f < 0) return std::nullopt;

  Solution sol;
  sol.assignment.assign(inst_.user_count(), -1);
  std::vector<char> open(nf_, 0);
  replay(tree_.root(), best_f, inst_.r(), sol, open);
  for (FacilityId f = 0; f < nf_; ++f) {
    if (open[f]) sol.open_facilities.push_back(f);
  }
  return ProximityResult{best, std::move(sol)};
}

}  // namespace

std::optional<ProximityResult> solve_proximity(const Instance& instance, Objective objective,
                                               const ProximityOptions& options) {
  if (!instance.structurally_feasible()) return std::nullopt;
  if (instance.is_normal_form()) {
    return ProximityDp(instance, objective, options).extract();
  }
  Instance normal = normalized(instance);
  return ProximityDp(normal, objective, options).extract();
}

std::optional<BruteResult> proximity_brute_reference(const Instance& instance,
                                                     Objective objective) {
  int nf = instance.facility_count();
  if (nf > 20) fail(Errc::TooLarge, "proximity reference handles at most 20 facilities");
  int nu = instance.user_count();
  std::optional<BruteResult> best;
  std::vector<FacilityId> open;
  for (unsigned mask = 1; mask < (1u << nf); ++mask) {
    open.clear();
    for (FacilityId f = 0; f < nf; ++f) {
      if (mask & (1u << f)) open.push_back(f);
    }
    if (static_cast<long long>(open.size()) * instance.r() > nu) continue;
    std::vector<long long> load(nf, 0);
    long long minmax = 0, minsum = 0;
    Solution sol;
    sol.open_facilities = open;
    sol.assignment.assign(nu, -1);
    for (UserId u = 0; u < nu; ++u) {
      NearestResult near = nearest_open_facility(instance, open, instance.user_vertex(u));
      sol.assignment[u] = near.facility;
      ++load[near.facility];
      minmax = std::max(minmax, near.distance);
      minsum += near.distance;
    }
    bool ok = true;
    for (FacilityId f : open) {
      if (load[f] < instance.r()) { ok = false; break; }
    }
    if (!ok) continue;
    long long cost = objective == Objective::MinMax ? minmax : minsum;
    if (!best || cost < best->cost) best = BruteResult{cost, std::move(sol)};
  }
  return best;
}

}  // namespace rgather
