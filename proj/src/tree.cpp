#include "rgather/tree.hpp"

#include <algorithm>
#include <queue>

namespace rgather {

WeightedTree WeightedTree::build(std::span<const EdgeInput> edges, VertexId root) {
  VertexId max_id = root;
  for (const EdgeInput& e : edges) {
    if (e.length < 0) {
      fail(Errc::NegativeLength, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     ") has length " + std::to_string(e.length));
    }
    if (e.u < 0 || e.v < 0) fail(Errc::InvalidVertex, "negative vertex id in edge list");
    if (e.u == e.v) fail(Errc::CycleDetected, "self loop at vertex " + std::to_string(e.u));
    max_id = std::max({max_id, e.u, e.v});
  }
  if (root < 0) fail(Errc::InvalidVertex, "negative root id");
  int n = max_id + 1;

  struct Adj { VertexId to; int edge; };
  std::vector<std::vector<Adj>> adj(n);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }

  WeightedTree t;
  t.root_ = root;
  t.parent_.assign(n, -1);
  t.parent_len_.assign(n, 0);
  t.children_.assign(n, {});
  t.root_dist_.assign(n, 0);
  t.depth_.assign(n, 0);

  std::vector<int> entry_edge(n, -1);
  std::vector<char> visited(n, 0);
  std::queue<VertexId> queue;
  queue.push(root);
  visited[root] = 1;
  int seen = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop();
    for (const Adj& a : adj[v]) {
      if (a.edge == entry_edge[v]) continue;
      if (visited[a.to]) {
        fail(Errc::CycleDetected, "extra edge into vertex " + std::to_string(a.to));
      }
      visited[a.to] = 1;
      ++seen;
      entry_edge[a.to] = a.edge;
      t.parent_[a.to] = v;
      t.parent_len_[a.to] = edges[a.edge].length;
      t.children_[v].push_back(a.to);
      t.root_dist_[a.to] = t.root_dist_[v] + edges[a.edge].length;
      t.depth_[a.to] = t.depth_[v] + 1;
      queue.push(a.to);
    }
  }
  if (seen != n) {
    fail(Errc::Disconnected, std::to_string(n - seen) + " vertices unreachable from root");
  }

  t.build_lookup_tables();
  return t;
}

void WeightedTree::build_lookup_tables() {
  int n = vertex_count();
  int logn = 1;
  while ((1 << logn) < n) ++logn;
  up_.assign(logn + 1, std::vector<VertexId>(n, root_));
  for (int v = 0; v < n; ++v) up_[0][v] = parent_[v] < 0 ? root_ : parent_[v];
  for (int k = 1; k <= logn; ++k) {
    for (int v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
  }

  tin_.assign(n, 0);
  tout_.assign(n, 0);
  postorder_.clear();
  postorder_.reserve(n);
  int clock = 0;
  // Iterative DFS; trees from binarization can be deep chains.
  std::vector<std::pair<VertexId, size_t>> stack;
  stack.emplace_back(root_, 0);
  tin_[root_] = clock++;
  while (!stack.empty()) {
    auto& [v, next_child] = stack.back();
    if (next_child < children_[v].size()) {
      VertexId c = children_[v][next_child++];
      tin_[c] = clock++;
      stack.emplace_back(c, 0);
    } else {
      tout_[v] = clock++;
      postorder_.push_back(v);
      stack.pop_back();
    }
  }
}

VertexId WeightedTree::lca(VertexId v, VertexId w) const {
  check_vertex(v);
  check_vertex(w);
  if (depth_[v] < depth_[w]) std::swap(v, w);
  int diff = depth_[v] - depth_[w];
  for (int k = 0; diff != 0; ++k, diff >>= 1) {
    if (diff & 1) v = up_[k][v];
  }
  if (v == w) return v;
  for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
    if (up_[k][v] != up_[k][w]) { v = up_[k][v]; w = up_[k][w]; }
  }
  return parent_[v];
}

bool WeightedTree::is_full_binary() const {
  for (VertexId v = 0; v < vertex_count(); ++v) {
    size_t c = children_[v].size();
    if (c != 0 && c != 2) return false;
  }
  return true;
}

BinarizeResult binarize(const WeightedTree& tree, std::span<const VertexId> sites) {
  int n = tree.vertex_count();
  std::vector<std::vector<int>> tokens_at(n);
  for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
    VertexId host = sites[i];
    if (host < 0 || host >= n) fail(Errc::InvalidVertex, "site vertex " + std::to_string(host));
    tokens_at[host].push_back(i);
  }

  std::vector<EdgeInput> out_edges;
  out_edges.reserve(2 * n + sites.size());
  int next_id = n;
  std::vector<VertexId> site_vertex(sites.size(), -1);
  std::vector<VertexId> original_vertex(n);
  for (int v = 0; v < n; ++v) original_vertex[v] = v;

  // Child lists for the rewritten tree: original children plus one
  // zero-length pendant per site token, unless a lone token already sits
  // on a dedicated leaf.
  std::vector<std::vector<std::pair<VertexId, long long>>> kids(n);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId c : tree.children(v)) kids[v].emplace_back(c, tree.edge_length_to_parent(c));
    bool lone_leaf_site = tokens_at[v].size() == 1 && tree.children(v).empty();
    if (lone_leaf_site) {
      site_vertex[tokens_at[v][0]] = v;
    } else {
      for (int token : tokens_at[v]) {
        VertexId pendant = next_id++;
        site_vertex[token] = pendant;
        kids[v].emplace_back(pendant, 0);
      }
    }
  }

  // Expand each vertex to a zero-length chain so everything has 0 or 2
  // children; single-child vertices get a zero-length dummy leaf.
  for (VertexId v = 0; v < n; ++v) {
    VertexId tail = v;
    size_t k = kids[v].size();
    for (size_t i = 0; i < k; ++i) {
      if (i + 2 < k) {
        VertexId link = next_id++;
        out_edges.push_back({tail, kids[v][i].first, kids[v][i].second});
        out_edges.push_back({tail, link, 0});
        tail = link;
      } else {
        out_edges.push_back({tail, kids[v][i].first, kids[v][i].second});
      }
    }
    if (k == 1) out_edges.push_back({tail, next_id++, 0});  // dummy leaf
  }

  BinarizeResult result{WeightedTree::build(out_edges, tree.root()), std::move(site_vertex),
                        std::move(original_vertex)};
  return result;
}

RoundedTree::RoundedTree(const WeightedTree& base, Rational unit) : base_(&base), unit_(unit) {
  if (!unit_.is_positive()) fail(Errc::NonPositiveUnit, "rounding unit " + unit_.str());
  int n = base.vertex_count();
  rroot_.resize(n);
  rlen_.resize(n);
  for (VertexId v = 0; v < n; ++v) rroot_[v] = unit_.floor_div(base.root_distance(v));
  for (VertexId v = 0; v < n; ++v) {
    VertexId p = base.parent(v);
    rlen_[v] = p < 0 ? 0 : rroot_[v] - rroot_[p];
  }
}

RoundedTree round_lengths(const WeightedTree& tree, const Rational& unit) {
  return RoundedTree(tree, unit);
}

}  // namespace rgather
