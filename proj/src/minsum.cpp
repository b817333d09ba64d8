#include "rgather/minsum.hpp"

#include <algorithm>
#include <deque>

namespace rgather {

MinsumTables::MinsumTables(const Instance& instance)
    : instance_(&instance), user_total_(instance.user_count()) {
  const WeightedTree& tree = instance.tree();
  if (!tree.is_full_binary()) {
    fail(Errc::InvalidParams, "min-sum tables need a full binary tree");
  }
  int n = tree.vertex_count();
  int width = 2 * user_total_ + 1;
  pre_.assign(n, std::vector<long long>(width, kInfCost));
  post_.assign(n, std::vector<long long>(width, kInfCost));
  choice_k_.assign(n, std::vector<int32_t>(width, 0));
  fac_from_.assign(n, std::vector<int32_t>(width, kNoFacility));
  inside_users_.assign(n, 0);

  const int total = user_total_;
  for (VertexId v : tree.postorder()) {
    const auto& kids = tree.children(v);
    int uv = instance.users_at(v);
    std::vector<long long>& pre = pre_[v];

    if (kids.empty()) {
      inside_users_[v] = uv;
      pre[uv + total] = 0;
    } else {
      VertexId x = kids[0], y = kids[1];
      inside_users_[v] = uv + inside_users_[x] + inside_users_[y];
      long long dx = tree.edge_length_to_parent(x);
      long long dy = tree.edge_length_to_parent(y);
      const std::vector<long long>& px = post_[x];
      const std::vector<long long>& py = post_[y];

      for (int ti = 0; ti < 2 * total + 1; ++ti) {
        int t = ti - total;
        // k runs over x-balances; y takes t - uv - k. In index space the
        // two child lookups sum to a constant; the range just keeps both
        // lookups inside the tables.
        int s = t - uv + 2 * total;  // ki + yi
        int klo = std::max(0, s - 2 * total);
        int khi = std::min(2 * total, s);
        long long best = kInfCost;
        int32_t best_k = 0;
        for (int ki = klo; ki <= khi; ++ki) {
          long long a = px[ki];
          long long b = py[s - ki];
          if (a >= kInfCost || b >= kInfCost) continue;
          long long cost = a + b + std::llabs(ki - total) * dx +
                           std::llabs(s - ki - total) * dy;
          if (cost < best) { best = cost; best_k = ki - total; }
        }
        if (best < kInfCost) { pre[ti] = best; choice_k_[v][ti] = best_k; }
      }
    }

    std::vector<long long>& post = post_[v];
    post = pre;
    FacilityId f = instance.facility_at_vertex(v);
    if (f >= 0) {
      // Suffix minima of pre let the open option scan in O(1) per t.
      std::vector<long long> suf(2 * total + 2, kInfCost);
      std::vector<int32_t> arg(2 * total + 2, 0);
      for (int i = 2 * total; i >= 0; --i) {
        suf[i] = suf[i + 1];
        arg[i] = arg[i + 1];
        if (pre[i] < suf[i]) { suf[i] = pre[i]; arg[i] = i; }
      }
      long long open_cost = instance.facility(f).open_cost;
      for (int ti = 0; ti < 2 * total + 1; ++ti) {
        int floor_index = ti + instance.r();  // k >= t + r
        if (floor_index > 2 * total + 1) floor_index = 2 * total + 1;
        if (suf[floor_index] >= kInfCost) continue;
        long long opened = open_cost + suf[floor_index];
        if (opened < post[ti]) {
          post[ti] = opened;
          fac_from_[v][ti] = arg[floor_index];
        }
      }
    }

    // Balances demanding more inbound users than exist outside the
    // subtree can never be realized.
    int outside = total - inside_users_[v];
    for (int t = -total; t < -outside; ++t) {
      post[t + total] = kInfCost;
      fac_from_[v][t + total] = kNoFacility;
    }
  }
}

namespace {

struct ReplayStep {
  int flow_x = 0, flow_y = 0;
  int absorb = 0;
  bool open = false;
};

}  // namespace

Solution MinsumTables::reconstruct() const {
  const Instance& inst = *instance_;
  const WeightedTree& tree = inst.tree();
  if (optimum() >= kInfCost) fail(Errc::CorruptTables, "no finite optimum to reconstruct");

  int n = tree.vertex_count();
  std::vector<ReplayStep> steps(n);
  std::vector<char> active(n, 0);

  // Top-down replay of the recorded balances.
  struct Frame { VertexId v; int t; };
  std::vector<Frame> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [v, t] = stack.back();
    stack.pop_back();
    active[v] = 1;
    ReplayStep& step = steps[v];
    int s = t;
    if (fac_from_[v][index(t)] != kNoFacility) {
      int from = fac_from_[v][index(t)];
      step.open = true;
      step.absorb = from - index(t);
      s = from - user_total_;
    }
    if (pre_[v][index(s)] >= kInfCost) fail(Errc::CorruptTables, "replay hit an infinite entry");
    const auto& kids = tree.children(v);
    if (kids.empty()) {
      if (s != inst.users_at(v)) fail(Errc::CorruptTables, "leaf balance mismatch");
      continue;
    }
    int kx = choice_k_[v][index(s)];
    int ky = s - inst.users_at(v) - kx;
    step.flow_x = kx;
    step.flow_y = ky;
    stack.push_back({kids[0], kx});
    stack.push_back({kids[1], ky});
  }

  // Route concrete users along the recorded flows. Children sending
  // users up are drained before the absorption at v; children demanding
  // users are fed afterwards.
  Solution solution;
  solution.assignment.assign(inst.user_count(), -1);
  std::vector<std::vector<UserId>> users_on(n);
  for (UserId u = 0; u < inst.user_count(); ++u) users_on[inst.user_vertex(u)].push_back(u);

  auto route = [&](auto&& self, VertexId v, std::deque<UserId> incoming) -> std::deque<UserId> {
    const ReplayStep& step = steps[v];
    std::deque<UserId> pool(std::move(incoming));
    for (UserId u : users_on[v]) pool.push_back(u);
    const auto& kids = tree.children(v);
    for (int side = 0; side < static_cast<int>(kids.size()); ++side) {
      int flow = side == 0 ? step.flow_x : step.flow_y;
      if (flow >= 0) {
        std::deque<UserId> up = self(self, kids[side], {});
        if (static_cast<int>(up.size()) != flow) {
          fail(Errc::CorruptTables, "upward flow mismatch");
        }
        for (UserId u : up) pool.push_back(u);
      }
    }
    if (step.open) {
      FacilityId f = inst.facility_at_vertex(v);
      if (f < 0 || step.absorb > static_cast<int>(pool.size())) {
        fail(Errc::CorruptTables, "absorption exceeds available users");
      }
      solution.open_facilities.push_back(f);
      for (int i = 0; i < step.absorb; ++i) {
        solution.assignment[pool.front()] = f;
        pool.pop_front();
      }
    }
    for (int side = 0; side < static_cast<int>(kids.size()); ++side) {
      int flow = side == 0 ? step.flow_x : step.flow_y;
      if (flow < 0) {
        if (static_cast<int>(pool.size()) < -flow) {
          fail(Errc::CorruptTables, "not enough users for downward flow");
        }
        std::deque<UserId> down;
        for (int i = 0; i < -flow; ++i) {
          down.push_back(pool.front());
          pool.pop_front();
        }
        std::deque<UserId> back = self(self, kids[side], std::move(down));
        if (!back.empty()) fail(Errc::CorruptTables, "downward branch returned users");
      }
    }
    return pool;
  };

  std::deque<UserId> leftover = route(route, tree.root(), {});
  if (!leftover.empty()) fail(Errc::CorruptTables, "users left unassigned at the root");
  std::sort(solution.open_facilities.begin(), solution.open_facilities.end());
  return solution;
}

MinsumResult solve_minsum(const Instance& instance) {
  if (!instance.structurally_feasible()) {
    fail(Errc::InfeasibleInstance, "need |U| >= r and at least one facility");
  }
  Instance normal = instance.is_normal_form() ? instance : normalized(instance);
  MinsumTables tables(normal);
  if (tables.optimum() >= kInfCost) {
    fail(Errc::InfeasibleInstance, "no assignment satisfies the lower bounds");
  }
  Solution solution = tables.reconstruct();
  return {tables.optimum(), std::move(solution)};
}

}  // namespace rgather
