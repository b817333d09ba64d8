#pragma once

#include <optional>

#include "rgather/brute.hpp"
#include "rgather/instance.hpp"

namespace rgather {

enum class Objective { MinMax, MinSum };

struct ProximityOptions {
  /// Commitment cap for the DP's counting dimension; must be >= r.
  /// -1 means r. Raising it must never change the optimum.
  int commit_cap = -1;
  /// Re-derive every transition by direct enumeration instead of the
  /// precomputed filtered minima; used to cross-validate the fast path.
  bool naive_transitions = false;
};

struct ProximityResult {
  long long cost = 0;
  Solution solution;
};

/// Exact optimum over solutions where every user goes to its nearest
/// open facility (ties broken by facility id) and every open facility
/// serves at least r users. nullopt when no open set admits one.
/// Facility open costs are not part of this objective.
std::optional<ProximityResult> solve_proximity(const Instance& instance, Objective objective,
                                               const ProximityOptions& options = {});

/// Reference oracle: tries every non-empty open subset with the forced
/// nearest assignment. Requires facility_count() <= 20.
std::optional<BruteResult> proximity_brute_reference(const Instance& instance,
                                                     Objective objective);

}  // namespace rgather
