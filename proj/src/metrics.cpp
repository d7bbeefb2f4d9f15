#include "eel/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace eel {

WorkloadWeights::WorkloadWeights(std::vector<double> raw) : weights(std::move(raw)) {
  if (weights.empty()) throw EngineError("workload weights: empty");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw EngineError("workload weights: negative weight");
    sum += w;
  }
  if (sum <= 0.0) throw EngineError("workload weights: sum must be positive");
  for (double& w : weights) w /= sum;
}

WorkloadWeights WorkloadWeights::uniform(std::size_t n) {
  if (n == 0) throw EngineError("workload weights: empty");
  return WorkloadWeights(std::vector<double>(n, 1.0));
}

double q_error(double estimate, double actual) {
  double e = std::max(estimate, 1.0);
  double a = std::max(actual, 1.0);
  return std::max(e, a) / std::min(e, a);
}

double q_cost(const std::vector<Query>& workload, const WorkloadWeights& weights,
              const IndexConfig& idx, const CostFn& cost_fn) {
  if (workload.size() != weights.weights.size())
    throw EngineError("q_cost: workload / weights length mismatch");
  IndexConfig baseline(idx.size());
  double total = 0.0;
  for (std::size_t i = 0; i < workload.size(); ++i) {
    double r0 = cost_fn(workload[i], baseline);
    if (r0 <= 0.0) throw EngineError("q_cost: baseline cost must be positive");
    double rk = cost_fn(workload[i], idx);
    total += weights.weights[i] * rk / r0;
  }
  return total;
}

double rl_reward(double q_cost_value) { return 1.0 - q_cost_value; }

}  // namespace eel
