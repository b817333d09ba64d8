#include "rgather/brute.hpp"

#include <algorithm>
#include <cmath>

namespace rgather {

namespace {

enum class Objective { MinMax, MinSum };

void check_ceilings(const Instance& instance, const BruteConfig& config) {
  int nu = instance.user_count();
  int nf = instance.facility_count();
  if (nu > config.max_users || nf > config.max_facilities) {
    fail(Errc::TooLarge, std::to_string(nu) + " users / " + std::to_string(nf) +
                             " facilities exceed brute ceilings");
  }
  long double total = std::pow(static_cast<long double>(std::max(nf, 1)),
                               static_cast<long double>(nu)) *
                      std::pow(2.0L, static_cast<long double>(nf));
  if (total > static_cast<long double>(config.max_enumeration)) {
    fail(Errc::TooLarge, "enumeration would exceed the configured ceiling");
  }
}

// Walks every assignment of the kept users onto the open set by counting
// in base |open|; `ignored` users stay unassigned.
std::optional<BruteResult> best_over_assignments(const Instance& instance,
                                                 const std::vector<FacilityId>& open,
                                                 const std::vector<char>& ignored,
                                                 Objective objective) {
  int nu = instance.user_count();
  int width = static_cast<int>(open.size());
  std::vector<UserId> kept;
  for (UserId u = 0; u < nu; ++u) {
    if (!ignored[u]) kept.push_back(u);
  }
  if (static_cast<long long>(kept.size()) < static_cast<long long>(width) * instance.r()) {
    return std::nullopt;
  }

  long long open_cost = 0;
  for (FacilityId f : open) open_cost += instance.facility(f).open_cost;

  std::vector<int> digits(kept.size(), 0);
  std::vector<long long> load(width, 0);
  std::optional<BruteResult> best;
  while (true) {
    load.assign(width, 0);
    long long minmax = 0;
    long long minsum = open_cost;
    for (size_t i = 0; i < kept.size(); ++i) {
      FacilityId f = open[digits[i]];
      ++load[digits[i]];
      long long d = instance.user_facility_distance(kept[i], f);
      minmax = std::max(minmax, d);
      minsum += d;
    }
    bool covered = true;
    for (int j = 0; j < width; ++j) {
      if (load[j] < instance.r()) { covered = false; break; }
    }
    if (covered) {
      long long cost = objective == Objective::MinMax ? minmax : minsum;
      if (!best || cost < best->cost) {
        Solution sol;
        sol.open_facilities = open;
        sol.assignment.assign(nu, -1);
        for (size_t i = 0; i < kept.size(); ++i) sol.assignment[kept[i]] = open[digits[i]];
        best = BruteResult{cost, std::move(sol)};
      }
    }
    size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == width) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return best;
}

std::optional<BruteResult> best_over_open_sets(const Instance& instance, Objective objective,
                                               int open_cap,
                                               const std::vector<char>& ignored) {
  int nf = instance.facility_count();
  std::optional<BruteResult> best;
  for (unsigned mask = 1; mask < (1u << nf); ++mask) {
    std::vector<FacilityId> open;
    for (int f = 0; f < nf; ++f) {
      if (mask & (1u << f)) open.push_back(f);
    }
    if (open_cap >= 0 && static_cast<int>(open.size()) > open_cap) continue;
    std::optional<BruteResult> candidate =
        best_over_assignments(instance, open, ignored, objective);
    if (candidate && (!best || candidate->cost < best->cost)) best = std::move(candidate);
  }
  return best;
}

std::optional<BruteResult> solve(const Instance& instance, const BruteConfig& config,
                                 Objective objective, int outlier_budget, int open_cap) {
  check_ceilings(instance, config);
  int nu = instance.user_count();
  std::optional<BruteResult> best;

  // Enumerate ignored subsets within budget (empty set when budget is 0).
  std::vector<char> ignored(nu, 0);
  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < (1u << nu); ++mask) {
    if (__builtin_popcount(mask) <= outlier_budget) masks.push_back(mask);
  }
  for (unsigned mask : masks) {
    for (int u = 0; u < nu; ++u) ignored[u] = (mask >> u) & 1u;
    std::optional<BruteResult> candidate = best_over_open_sets(instance, objective, open_cap, ignored);
    if (candidate && (!best || candidate->cost < best->cost)) best = std::move(candidate);
  }
  return best;
}

}  // namespace

std::optional<BruteResult> brute_minmax(const Instance& instance, const BruteConfig& config) {
  return solve(instance, config, Objective::MinMax, 0, -1);
}

std::optional<BruteResult> brute_minsum(const Instance& instance, const BruteConfig& config) {
  return solve(instance, config, Objective::MinSum, 0, -1);
}

std::optional<BruteResult> brute_variants(const Instance& instance, const BruteConfig& config) {
  return solve(instance, config, Objective::MinMax, config.outlier_budget, config.open_cap);
}

}  // namespace rgather
