#include "doctest.h"
#include "eel/metrics.hpp"

using namespace eel;

TEST_CASE("q_error: symmetric multiplicative error") {
  CHECK(q_error(10, 10) == doctest::Approx(1.0));
  CHECK(q_error(5, 50) == doctest::Approx(10.0));
  CHECK(q_error(50, 5) == doctest::Approx(10.0));
  // nonpositive values clamp to 1 before the ratio
  CHECK(q_error(0, 8) == doctest::Approx(8.0));
  CHECK(q_error(8, 0) == doctest::Approx(8.0));
  CHECK(q_error(0, 0) == doctest::Approx(1.0));
  CHECK(q_error(-3, 4) == doctest::Approx(4.0));
  CHECK(q_error(2, 3) >= 1.0);
}

TEST_CASE("WorkloadWeights: normalization and validation") {
  WorkloadWeights w({2.0, 2.0});
  CHECK(w.weights[0] == doctest::Approx(0.5));
  CHECK(w.weights[1] == doctest::Approx(0.5));
  auto u = WorkloadWeights::uniform(4);
  for (double v : u.weights) CHECK(v == doctest::Approx(0.25));
  CHECK_THROWS_AS(WorkloadWeights({}), EngineError);
  CHECK_THROWS_AS(WorkloadWeights({1.0, -1.0}), EngineError);
  CHECK_THROWS_AS(WorkloadWeights({0.0, 0.0}), EngineError);
}

TEST_CASE("q_cost: weighted cost ratio against the empty configuration") {
  Query qa;
  qa.table = "t";
  qa.predicates.push_back({"a", PredOp::Eq, 1, 1});
  Query qb;
  qb.table = "t";
  qb.predicates.push_back({"b", PredOp::Eq, 1, 1});
  std::vector<Query> workload = {qa, qb};

  // column a costs 100 unindexed / 10 indexed, column b always 100
  CostFn cost = [](const Query& q, const IndexConfig& idx) {
    if (q.predicates[0].column == "a" && idx.size() > 0 && idx.has(0))
      return 10.0;
    return 100.0;
  };

  IndexConfig none(2);
  CHECK(q_cost(workload, WorkloadWeights::uniform(2), none, cost) ==
        doctest::Approx(1.0));

  IndexConfig on_a(2);
  on_a.set(0, true);
  CHECK(q_cost(workload, WorkloadWeights::uniform(2), on_a, cost) ==
        doctest::Approx(0.5 * 0.1 + 0.5 * 1.0));
  CHECK(q_cost(workload, WorkloadWeights({3.0, 1.0}), on_a, cost) ==
        doctest::Approx(0.75 * 0.1 + 0.25 * 1.0));

  CHECK_THROWS_AS(q_cost(workload, WorkloadWeights::uniform(3), none, cost),
                  EngineError);
}

TEST_CASE("rl_reward: complements the cost") {
  CHECK(rl_reward(1.0) == doctest::Approx(0.0));
  CHECK(rl_reward(0.55) == doctest::Approx(0.45));
  CHECK(rl_reward(0.0) == doctest::Approx(1.0));
}
