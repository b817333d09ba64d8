#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rgather/error.hpp"
#include "rgather/rational.hpp"

namespace rgather {

using VertexId = int32_t;

struct EdgeInput {
  VertexId u = 0;
  VertexId v = 0;
  long long length = 0;
};

/// Rooted tree with non-negative integer edge lengths. Immutable after
/// construction; distance queries go through precomputed root distances
/// and binary-lifting LCA tables.
class WeightedTree {
 public:
  /// Validates and orients an undirected edge list away from `root`.
  /// Throws NegativeLength / CycleDetected / Disconnected / InvalidVertex.
  static WeightedTree build(std::span<const EdgeInput> edges, VertexId root);

  int vertex_count() const { return static_cast<int>(parent_.size()); }
  VertexId root() const { return root_; }
  VertexId parent(VertexId v) const { check_vertex(v); return parent_[v]; }
  long long edge_length_to_parent(VertexId v) const { check_vertex(v); return parent_len_[v]; }
  const std::vector<VertexId>& children(VertexId v) const { check_vertex(v); return children_[v]; }
  long long root_distance(VertexId v) const { check_vertex(v); return root_dist_[v]; }

  VertexId lca(VertexId v, VertexId w) const;

  /// Tree metric: sum of edge lengths on the unique v-w path.
  long long distance(VertexId v, VertexId w) const {
    VertexId a = lca(v, w);
    return root_dist_[v] + root_dist_[w] - 2 * root_dist_[a];
  }

  /// True when `v` lies in the subtree rooted at `ancestor`.
  bool in_subtree(VertexId ancestor, VertexId v) const {
    check_vertex(ancestor); check_vertex(v);
    return tin_[ancestor] <= tin_[v] && tout_[v] <= tout_[ancestor];
  }

  bool is_full_binary() const;

  /// Vertices in a bottom-up (children before parents) order.
  const std::vector<VertexId>& postorder() const { return postorder_; }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= vertex_count()) fail(Errc::InvalidVertex, "vertex " + std::to_string(v));
  }
  void build_lookup_tables();

  VertexId root_ = 0;
  std::vector<VertexId> parent_;
  std::vector<long long> parent_len_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<long long> root_dist_;
  std::vector<int32_t> depth_;
  std::vector<std::vector<VertexId>> up_;
  std::vector<int32_t> tin_, tout_;
  std::vector<VertexId> postorder_;
};

/// Result of the full-binary rewrite: every site token is alone on its
/// own vertex (a zero-length pendant unless it already had a dedicated
/// leaf), every vertex has 0 or 2 children, and all pairwise distances
/// among relocated sites match the input tree exactly.
struct BinarizeResult {
  WeightedTree tree;
  std::vector<VertexId> site_vertex;      // token index -> vertex in `tree`
  std::vector<VertexId> original_vertex;  // original vertex id -> vertex in `tree`
};

BinarizeResult binarize(const WeightedTree& tree, std::span<const VertexId> sites);

/// Snapped copy of a tree: every vertex moves toward the root onto the
/// grid of multiples of `unit`, so edge lengths become small integers.
/// rounded_root_distance(z) == floor(root_distance(z) / unit) for all z.
class RoundedTree {
 public:
  RoundedTree(const WeightedTree& base, Rational unit);

  const WeightedTree& base() const { return *base_; }
  const Rational& unit() const { return unit_; }

  long long rounded_edge_length(VertexId v) const { return rlen_[v]; }
  long long rounded_root_distance(VertexId v) const { return rroot_[v]; }

  long long rounded_distance(VertexId v, VertexId w) const {
    VertexId a = base_->lca(v, w);
    return rroot_[v] + rroot_[w] - 2 * rroot_[a];
  }

 private:
  const WeightedTree* base_;
  Rational unit_;
  std::vector<long long> rlen_;   // per vertex: rounded length of edge to parent
  std::vector<long long> rroot_;
};

/// Throws NonPositiveUnit unless unit > 0.
RoundedTree round_lengths(const WeightedTree& tree, const Rational& unit);

}  // namespace rgather
