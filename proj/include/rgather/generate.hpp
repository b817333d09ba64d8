#pragma once

#include <cstdint>

#include "rgather/instance.hpp"

namespace rgather {

enum class TreeShape { RandomAttachment, Path, Star, Caterpillar };

struct GenParams {
  uint64_t seed = 0;
  int n_vertices = 8;
  int n_users = 4;
  int n_facilities = 2;
  long long max_len = 10;
  TreeShape shape = TreeShape::RandomAttachment;
  int r = 2;
  long long max_open_cost = 0;  // 0 = free facilities
  long long min_len = 0;
};

/// Deterministic random instance: tree per `shape`, sites placed on
/// distinct vertices. Throws InvalidParams when the counts do not fit.
Instance generate(const GenParams& params);

TreeShape parse_shape(const std::string& name);
const char* shape_name(TreeShape shape);

}  // namespace rgather
