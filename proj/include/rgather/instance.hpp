#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rgather/tree.hpp"

namespace rgather {

using UserId = int32_t;
using FacilityId = int32_t;

struct FacilitySpot {
  VertexId vertex = 0;
  long long open_cost = 0;
};

/// An r-gathering instance: tree metric, user multiset, facility list
/// (with optional opening costs) and the per-facility lower bound r.
/// Instances are immutable once built; solvers share them freely.
class Instance {
 public:
  Instance(WeightedTree tree, std::vector<VertexId> users, std::vector<FacilitySpot> facilities,
           int r);

  const WeightedTree& tree() const { return tree_; }
  int r() const { return r_; }
  int user_count() const { return static_cast<int>(users_.size()); }
  int facility_count() const { return static_cast<int>(facilities_.size()); }
  VertexId user_vertex(UserId u) const { return users_.at(u); }
  const std::vector<VertexId>& user_vertices() const { return users_; }
  const FacilitySpot& facility(FacilityId f) const { return facilities_.at(f); }
  const std::vector<FacilitySpot>& facilities() const { return facilities_; }

  int users_at(VertexId v) const { return users_at_.at(v); }
  /// User on v (binarized instances host at most one), or -1.
  UserId user_at_vertex(VertexId v) const { return user_on_vertex_.at(v); }
  FacilityId facility_at_vertex(VertexId v) const { return facility_on_vertex_.at(v); }

  long long user_facility_distance(UserId u, FacilityId f) const {
    return tree_.distance(users_.at(u), facilities_.at(f).vertex);
  }

  /// True when every vertex has 0 or 2 children and hosts at most one
  /// site, with all sites on leaves (the form produced by normalized()).
  bool is_normal_form() const;

  /// |U| >= r and at least one facility: no solver can succeed otherwise.
  bool structurally_feasible() const { return user_count() >= r_ && facility_count() >= 1; }

  /// Sorted distinct user-facility distances; the min-max optimum is
  /// always one of these.
  std::vector<long long> candidate_distances() const;

 private:
  WeightedTree tree_;
  std::vector<VertexId> users_;
  std::vector<FacilitySpot> facilities_;
  int r_;
  std::vector<int> users_at_;
  std::vector<UserId> user_on_vertex_;
  std::vector<FacilityId> facility_on_vertex_;
};

/// Rewrites the instance onto a full binary tree with every user and
/// facility alone on its own leaf; ids and pairwise site distances are
/// preserved, so solutions transfer verbatim in both directions.
Instance normalized(const Instance& instance);

/// Open facilities plus a user assignment; assignment[u] == -1 marks an
/// ignored user (only meaningful for the outlier variant).
struct Solution {
  std::vector<FacilityId> open_facilities;  // sorted, distinct
  std::vector<int32_t> assignment;          // user id -> facility id or -1

  std::vector<UserId> ignored_users() const {
    std::vector<UserId> out;
    for (UserId u = 0; u < static_cast<UserId>(assignment.size()); ++u) {
      if (assignment[u] < 0) out.push_back(u);
    }
    return out;
  }
};

struct CostReport {
  long long minmax_cost = 0;
  long long minsum_cost = 0;  // distance sum + open costs
  std::vector<long long> per_facility_load;
};

/// Both objectives plus per-facility loads. Throws DanglingReference when
/// the solution indexes outside the instance.
CostReport evaluate(const Instance& instance, const Solution& solution);

struct VariantSpec {
  enum class Kind { Plain, Outliers, FacilityCap, Proximity };
  Kind kind = Kind::Plain;
  int outlier_budget = 0;
  int max_open = 0;

  static VariantSpec plain() { return {}; }
  static VariantSpec outliers(int budget) { return {Kind::Outliers, budget, 0}; }
  static VariantSpec capped(int k) { return {Kind::FacilityCap, 0, k}; }
  static VariantSpec proximity() { return {Kind::Proximity, 0, 0}; }
};

struct Violation {
  enum class Type {
    UnderLoadedFacility,
    UnassignedUser,
    AssignedToClosedFacility,
    TooManyOpen,
    NotNearestFacility,
    IgnoredOverBudget,
    DanglingReference,
  };
  Type type;
  std::string message;
};

/// Pure validator: returns every violated constraint, empty means ok.
std::vector<Violation> check_feasible(const Instance& instance, const Solution& solution,
                                      const VariantSpec& variant);

struct NearestResult {
  FacilityId facility = -1;
  long long distance = 0;
  bool tie = false;  // another open facility at the same distance lost by id
};

/// Nearest open facility from `vertex`, smallest id on ties.
/// Throws EmptyOpenSet when `open_set` is empty.
NearestResult nearest_open_facility(const Instance& instance,
                                    std::span<const FacilityId> open_set, VertexId vertex);

/// Strict preference order used everywhere ties matter: by distance from
/// `from`, then by facility id.
bool prefers_facility(const Instance& instance, VertexId from, FacilityId a, FacilityId b);

}  // namespace rgather
