#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "eel/query.hpp"
#include "eel/synthdb.hpp"

namespace eel {

/// Per-query weights, normalized to sum 1 on construction.
struct WorkloadWeights {
  std::vector<double> weights;

  explicit WorkloadWeights(std::vector<double> raw);
  static WorkloadWeights uniform(std::size_t n);
};

// Multiplicative estimation error, >= 1. Nonpositive inputs are clamped to 1.
double q_error(double estimate, double actual);

using CostFn = std::function<double(const Query&, const IndexConfig&)>;

// Weighted sum of per-query cost ratios against the no-index baseline;
// lower is better. 1.0 means the index set buys nothing.
double q_cost(const std::vector<Query>& workload, const WorkloadWeights& weights,
              const IndexConfig& idx, const CostFn& cost_fn);

// Agent-facing reward: 1 - q_cost, higher is better.
double rl_reward(double q_cost_value);

}  // namespace eel
