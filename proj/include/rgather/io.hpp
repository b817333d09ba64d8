#pragma once

#include <optional>
#include <string>

#include "rgather/instance.hpp"
#include "rgather/rational.hpp"

namespace rgather {

/// Parsed canonical instance file. Numeric payloads travel as decimal
/// strings so nothing is squeezed through floating point.
struct InstanceFile {
  Instance instance;
  std::optional<Rational> outlier_fraction;
  std::optional<int> max_open;
};

InstanceFile parse_instance_text(const std::string& text);
InstanceFile parse_instance_file(const std::string& path);

std::string serialize_instance(const Instance& instance,
                               const std::optional<Rational>& outlier_fraction = {},
                               const std::optional<int>& max_open = {});

Solution parse_solution_text(const std::string& text);
Solution parse_solution_file(const std::string& path);
std::string serialize_solution(const Solution& solution);

/// One structured record per solver run, emitted as a single JSON line.
struct RunReport {
  std::string solver;
  std::string instance_path;
  std::string parameters;  // e.g. "epsilon=1/2"
  std::optional<long long> cost;
  std::optional<long long> minsum_cost;
  std::string verdict;  // "ok", "infeasible", or "violations:<n>"
  double wall_ms = 0.0;
  std::optional<uint64_t> seed;
};

std::string serialize_report(const RunReport& report);

}  // namespace rgather
