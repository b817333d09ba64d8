#pragma once

#include <limits>
#include <optional>

#include "rgather/instance.hpp"

namespace rgather {

inline constexpr long long kInfCost = std::numeric_limits<long long>::max() / 4;

/// Bottom-up flow tables for the min-sum / lower-bounded facility
/// location DP. For each vertex v and balance t in [-|U|, |U|]:
///   t >= 0: all but t users of the subtree are served inside it, every
///           open facility below has >= r users, and t users will exit
///           upward through v;
///   t <  0: the subtree additionally serves |t| users that enter
///           downward through v.
/// value(v, t) is the cheapest such partial plan (edge crossings are
/// charged per edge, open costs at the facility), or kInfCost.
/// Requires a full binary tree; users and facilities may sit anywhere.
class MinsumTables {
 public:
  explicit MinsumTables(const Instance& instance);

  const Instance& instance() const { return *instance_; }
  int user_total() const { return user_total_; }

  /// Final value (facility open/close already decided at v).
  long long value(VertexId v, int t) const { return post_[v][index(t)]; }
  /// Value before the open-facility option at v is taken.
  long long pre_value(VertexId v, int t) const { return pre_[v][index(t)]; }

  long long optimum() const { return value(instance_->tree().root(), 0); }

  /// Replays the recorded choices into a concrete assignment realizing
  /// value(root, 0). Throws CorruptTables if the replay is inconsistent.
  Solution reconstruct() const;

 private:
  int index(int t) const {
    if (t < -user_total_ || t > user_total_) {
      fail(Errc::InvalidParams, "balance " + std::to_string(t) + " out of range");
    }
    return t + user_total_;
  }

  const Instance* instance_;
  int user_total_;
  std::vector<std::vector<long long>> pre_, post_;
  std::vector<std::vector<int32_t>> choice_k_;   // argmin child split for pre_
  std::vector<std::vector<int32_t>> fac_from_;   // pre_ index feeding the open option, or kNoFacility
  std::vector<int> inside_users_;

  static constexpr int32_t kNoFacility = INT32_MIN;
};

/// Exact min-sum r-gathering / LBFL optimum with a witness solution.
/// Throws InfeasibleInstance when |U| < r or there is no facility.
struct MinsumResult {
  long long cost = 0;
  Solution solution;
};

MinsumResult solve_minsum(const Instance& instance);

}  // namespace rgather
