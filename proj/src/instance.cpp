#include "rgather/instance.hpp"

#include <algorithm>

namespace rgather {

Instance::Instance(WeightedTree tree, std::vector<VertexId> users,
                   std::vector<FacilitySpot> facilities, int r)
    : tree_(std::move(tree)), users_(std::move(users)), facilities_(std::move(facilities)), r_(r) {
  if (r_ < 1) fail(Errc::ValidationError, "r must be positive, got " + std::to_string(r_));
  int n = tree_.vertex_count();
  users_at_.assign(n, 0);
  user_on_vertex_.assign(n, -1);
  facility_on_vertex_.assign(n, -1);
  for (UserId u = 0; u < static_cast<UserId>(users_.size()); ++u) {
    VertexId v = users_[u];
    if (v < 0 || v >= n) fail(Errc::InvalidVertex, "user vertex " + std::to_string(v));
    ++users_at_[v];
    user_on_vertex_[v] = u;
  }
  for (FacilityId f = 0; f < static_cast<FacilityId>(facilities_.size()); ++f) {
    VertexId v = facilities_[f].vertex;
    if (v < 0 || v >= n) fail(Errc::InvalidVertex, "facility vertex " + std::to_string(v));
    if (facilities_[f].open_cost < 0) {
      fail(Errc::ValidationError, "negative open cost on facility " + std::to_string(f));
    }
    facility_on_vertex_[v] = f;
  }
}

bool Instance::is_normal_form() const {
  if (!tree_.is_full_binary()) return false;
  for (VertexId v = 0; v < tree_.vertex_count(); ++v) {
    int sites = users_at_[v] + (facility_on_vertex_[v] >= 0 ? 1 : 0);
    if (sites > 1) return false;
    if (sites == 1 && !tree_.children(v).empty()) return false;
  }
  return true;
}

std::vector<long long> Instance::candidate_distances() const {
  std::vector<long long> c;
  c.reserve(static_cast<size_t>(user_count()) * facility_count());
  for (UserId u = 0; u < user_count(); ++u) {
    for (FacilityId f = 0; f < facility_count(); ++f) {
      c.push_back(user_facility_distance(u, f));
    }
  }
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

Instance normalized(const Instance& instance) {
  std::vector<VertexId> sites;
  sites.reserve(instance.user_count() + instance.facility_count());
  for (VertexId v : instance.user_vertices()) sites.push_back(v);
  for (const FacilitySpot& f : instance.facilities()) sites.push_back(f.vertex);

  BinarizeResult bin = binarize(instance.tree(), sites);

  std::vector<VertexId> users(instance.user_count());
  for (UserId u = 0; u < instance.user_count(); ++u) users[u] = bin.site_vertex[u];
  std::vector<FacilitySpot> facilities(instance.facility_count());
  for (FacilityId f = 0; f < instance.facility_count(); ++f) {
    facilities[f] = {bin.site_vertex[instance.user_count() + f],
                     instance.facility(f).open_cost};
  }
  return Instance(std::move(bin.tree), std::move(users), std::move(facilities), instance.r());
}

CostReport evaluate(const Instance& instance, const Solution& solution) {
  if (static_cast<int>(solution.assignment.size()) != instance.user_count()) {
    fail(Errc::DanglingReference, "assignment covers " +
                                      std::to_string(solution.assignment.size()) + " of " +
                                      std::to_string(instance.user_count()) + " users");
  }
  CostReport report;
  report.per_facility_load.assign(instance.facility_count(), 0);
  for (FacilityId f : solution.open_facilities) {
    if (f < 0 || f >= instance.facility_count()) {
      fail(Errc::DanglingReference, "open facility id " + std::to_string(f));
    }
    report.minsum_cost += instance.facility(f).open_cost;
  }
  for (UserId u = 0; u < instance.user_count(); ++u) {
    int32_t f = solution.assignment[u];
    if (f < 0) continue;
    if (f >= instance.facility_count()) {
      fail(Errc::DanglingReference, "user " + std::to_string(u) + " assigned to facility id " +
                                        std::to_string(f));
    }
    long long d = instance.user_facility_distance(u, f);
    report.minmax_cost = std::max(report.minmax_cost, d);
    report.minsum_cost += d;
    ++report.per_facility_load[f];
  }
  return report;
}

std::vector<Violation> check_feasible(const Instance& instance, const Solution& solution,
                                      const VariantSpec& variant) {
  using Type = Violation::Type;
  std::vector<Violation> out;
  auto add = [&out](Type type, std::string msg) { out.push_back({type, std::move(msg)}); };

  if (static_cast<int>(solution.assignment.size()) != instance.user_count()) {
    add(Type::DanglingReference, "assignment size mismatch");
    return out;
  }

  std::vector<char> open(instance.facility_count(), 0);
  for (FacilityId f : solution.open_facilities) {
    if (f < 0 || f >= instance.facility_count()) {
      add(Type::DanglingReference, "open facility id " + std::to_string(f));
      return out;
    }
    open[f] = 1;
  }

  std::vector<long long> load(instance.facility_count(), 0);
  int ignored = 0;
  for (UserId u = 0; u < instance.user_count(); ++u) {
    int32_t f = solution.assignment[u];
    if (f < 0) {
      ++ignored;
      if (variant.kind != VariantSpec::Kind::Outliers) {
        add(Type::UnassignedUser, "user " + std::to_string(u) + " unassigned");
      }
      continue;
    }
    if (f >= instance.facility_count()) {
      add(Type::DanglingReference, "user " + std::to_string(u) + " -> facility " +
                                       std::to_string(f));
      return out;
    }
    if (!open[f]) {
      add(Type::AssignedToClosedFacility,
          "user " + std::to_string(u) + " assigned to closed facility " + std::to_string(f));
    }
    ++load[f];
  }

  for (FacilityId f = 0; f < instance.facility_count(); ++f) {
    if (open[f] && load[f] < instance.r()) {
      add(Type::UnderLoadedFacility, "facility " + std::to_string(f) + " open with " +
                                         std::to_string(load[f]) + " < r=" +
                                         std::to_string(instance.r()) + " users");
    }
  }

  if (variant.kind == VariantSpec::Kind::Outliers && ignored > variant.outlier_budget) {
    add(Type::IgnoredOverBudget, std::to_string(ignored) + " ignored users exceed budget " +
                                     std::to_string(variant.outlier_budget));
  }
  if (variant.kind == VariantSpec::Kind::FacilityCap &&
      static_cast<int>(solution.open_facilities.size()) > variant.max_open) {
    add(Type::TooManyOpen, std::to_string(solution.open_facilities.size()) +
                               " open facilities exceed cap " + std::to_string(variant.max_open));
  }
  if (variant.kind == VariantSpec::Kind::Proximity && !solution.open_facilities.empty()) {
    for (UserId u = 0; u < instance.user_count(); ++u) {
      int32_t f = solution.assignment[u];
      if (f < 0) continue;
      NearestResult nearest =
          nearest_open_facility(instance, solution.open_facilities, instance.user_vertex(u));
      if (nearest.facility != f) {
        add(Type::NotNearestFacility, "user " + std::to_string(u) + " assigned to facility " +
                                          std::to_string(f) + " but nearest open is " +
                                          std::to_string(nearest.facility));
      }
    }
  }
  return out;
}

NearestResult nearest_open_facility(const Instance& instance,
                                    std::span<const FacilityId> open_set, VertexId vertex) {
  if (open_set.empty()) fail(Errc::EmptyOpenSet, "no open facility to pick from");
  NearestResult best;
  for (FacilityId f : open_set) {
    if (f < 0 || f >= instance.facility_count()) {
      fail(Errc::DanglingReference, "open facility id " + std::to_string(f));
    }
    long long d = instance.tree().distance(vertex, instance.facility(f).vertex);
    if (best.facility < 0 || d < best.distance) {
      best.facility = f;
      best.distance = d;
      best.tie = false;
    } else if (d == best.distance) {
      best.tie = true;
      best.facility = std::min(best.facility, f);
    }
  }
  return best;
}

bool prefers_facility(const Instance& instance, VertexId from, FacilityId a, FacilityId b) {
  long long da = instance.tree().distance(from, instance.facility(a).vertex);
  long long db = instance.tree().distance(from, instance.facility(b).vertex);
  if (da != db) return da < db;
  return a < b;
}

}  // namespace rgather
