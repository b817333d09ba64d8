#include "rgather/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace rgather {

Instance generate(const GenParams& params) {
  if (params.n_vertices < 1) fail(Errc::InvalidParams, "need at least one vertex");
  if (params.n_users < 0 || params.n_facilities < 0) {
    fail(Errc::InvalidParams, "negative site count");
  }
  if (params.n_users + params.n_facilities > params.n_vertices) {
    fail(Errc::InvalidParams, "sites are placed without replacement; not enough vertices");
  }
  if (params.r < 1) fail(Errc::InvalidParams, "r must be positive");
  if (params.min_len < 0 || params.max_len < params.min_len) {
    fail(Errc::InvalidParams, "bad edge length range");
  }

  std::mt19937_64 rng(params.seed);
  auto edge_len = [&]() -> long long {
    return std::uniform_int_distribution<long long>(params.min_len, params.max_len)(rng);
  };

  int n = params.n_vertices;
  std::vector<EdgeInput> edges;
  edges.reserve(n - 1);
  switch (params.shape) {
    case TreeShape::Path:
      for (int v = 1; v < n; ++v) edges.push_back({v - 1, v, edge_len()});
      break;
    case TreeShape::Star:
      for (int v = 1; v < n; ++v) edges.push_back({0, v, edge_len()});
      break;
    case TreeShape::Caterpillar: {
      // Spine of ~n/2 vertices, remaining vertices hang off it as legs.
      int spine = std::max(1, n / 2);
      for (int v = 1; v < spine; ++v) edges.push_back({v - 1, v, edge_len()});
      for (int v = spine; v < n; ++v) {
        int host = std::uniform_int_distribution<int>(0, spine - 1)(rng);
        edges.push_back({host, v, edge_len()});
      }
      break;
    }
    case TreeShape::RandomAttachment:
      for (int v = 1; v < n; ++v) {
        int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
        edges.push_back({parent, v, edge_len()});
      }
      break;
  }
  WeightedTree tree = WeightedTree::build(edges, 0);

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<VertexId> users(order.begin(), order.begin() + params.n_users);
  std::vector<FacilitySpot> facilities;
  facilities.reserve(params.n_facilities);
  for (int i = 0; i < params.n_facilities; ++i) {
    long long cost = params.max_open_cost > 0
                         ? std::uniform_int_distribution<long long>(0, params.max_open_cost)(rng)
                         : 0;
    facilities.push_back({order[params.n_users + i], cost});
  }
  return Instance(std::move(tree), std::move(users), std::move(facilities), params.r);
}

TreeShape parse_shape(const std::string& name) {
  if (name == "random_attachment") return TreeShape::RandomAttachment;
  if (name == "path") return TreeShape::Path;
  if (name == "star") return TreeShape::Star;
  if (name == "caterpillar") return TreeShape::Caterpillar;
  fail(Errc::InvalidParams, "unknown tree shape '" + name + "'");
}

const char* shape_name(TreeShape shape) {
  switch (shape) {
    case TreeShape::RandomAttachment: return "random_attachment";
    case TreeShape::Path: return "path";
    case TreeShape::Star: return "star";
    case TreeShape::Caterpillar: return "caterpillar";
  }
  return "?";
}

}  // namespace rgather
