#pragma once

#include <optional>

#include "rgather/instance.hpp"

namespace rgather {

/// Ceilings for the exponential reference solvers. The enumeration is
/// deliberately direct (open subsets x |open|^|U| assignments) so the
/// oracle stays obviously correct.
struct BruteConfig {
  int max_users = 8;
  int max_facilities = 4;
  long long max_enumeration = 200'000'000;  // subsets x assignments guard
  int outlier_budget = 0;                   // brute_variants only
  int open_cap = -1;                        // brute_variants only, -1 = off
};

struct BruteResult {
  long long cost = 0;
  Solution witness;
};

/// Exact min-max optimum, or nullopt when no feasible solution exists.
/// Throws TooLarge beyond the configured ceilings.
std::optional<BruteResult> brute_minmax(const Instance& instance, const BruteConfig& config = {});

/// Exact min-sum optimum including facility open costs.
std::optional<BruteResult> brute_minsum(const Instance& instance, const BruteConfig& config = {});

/// Min-max optimum with an ignored-user budget and/or an open-facility
/// cap taken from the config.
std::optional<BruteResult> brute_variants(const Instance& instance, const BruteConfig& config);

}  // namespace rgather
