#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eel/ekb.hpp"
#include "eel/learner.hpp"
#include "eel/metrics.hpp"
#include "eel/synthdb.hpp"
#include "eel/workload.hpp"

namespace eel {

/// Three-way exploration schedule with segmented attenuation of the rule
/// rate alpha; beta (random exploration) stays fixed.
struct ExplorationSchedule {
  double alpha0 = 0.0;
  double beta = 0.0;
  double w = 0.0;          // attenuation magnitude
  std::size_t c1 = 0;      // end of initial stage
  std::size_t c2 = 0;      // end of learning stage
  bool decrease = true;    // attenuation direction

  void validate() const;
  // Linear interpolation between alpha0 (iter <= c1) and alpha0 -/+ w
  // (iter >= c2), clamped to [0, 1 - beta].
  double alpha_at(std::size_t iter) const;
};

enum class ActionSource { Agent, Rule, Random };

const char* action_source_name(ActionSource s);

struct HistoryRow {
  std::size_t iter = 0;
  ActionSource source = ActionSource::Agent;
  std::size_t action = 0;
  double reward = 0.0;
  double q_cost = 0.0;
};

struct EerlConfig {
  std::size_t iterations = 8000;
  ExplorationSchedule schedule;
  std::size_t index_budget = 3;
  double freq_low = 0.05;   // drop threshold (rule iii)
  double freq_high = 0.2;   // build threshold (rule i)
  double gamma = 0.9;
  std::size_t window = 100;        // recent-workload window W (queries)
  std::size_t batch_advance = 10;  // queries consumed per env step
  std::size_t eval_queries = 100;  // Q-cost evaluation set size
  std::size_t minibatch = 64;
  double learning_rate = 1e-3;
  std::size_t pool_capacity = 10000;
  std::size_t hidden = 64;
  std::size_t kb_interval = 1000;  // W_kb, EKB re-check period
  double ekb_threshold = 0.75;
  u64 seed = 0;
};

/// Online index-tuning environment over a set of synthetic tables. The
/// global column universe is the concatenation of every table's columns;
/// actions revise one index bit at a time.
class IndexTuningEnv {
 public:
  IndexTuningEnv(std::vector<TableSpec> specs, std::vector<TableStats> stats,
                 std::vector<QueryTemplate> templates, const EerlConfig& config,
                 u64 stream_seed);

  std::size_t num_columns() const { return columns_.size(); }
  std::size_t action_count() const { return 2 * num_columns() + 1; }
  std::size_t noop_action() const { return 2 * num_columns(); }
  std::size_t state_dim() const { return 2 * num_columns(); }

  const std::vector<std::string>& column_names() const { return columns_; }
  const IndexConfig& index_config() const { return idx_; }
  const std::vector<Query>& window() const { return window_; }
  const std::vector<Query>& eval_set() const { return eval_set_; }

  std::vector<double> state() const;
  std::vector<double> frequencies() const;

  double cost(const Query& q, const IndexConfig& idx) const;
  double q_cost_of(const IndexConfig& idx) const;

  // Applies the index revision, advances the workload window by one batch,
  // and returns the ELC what-if reward. Over-budget builds become no-ops
  // with reward -0.01.
  struct StepResult {
    std::vector<double> next_state;
    double reward = 0.0;
    double q_cost = 0.0;
  };
  StepResult step(std::size_t action);

  // Priority rules: drop an index whose column frequency fell below
  // freq_low; else build the most frequent unindexed column at or above
  // freq_high when the budget allows; else no-op.
  std::size_t rule_action() const;

 private:
  void refill_window();
  std::size_t table_of_column(std::size_t global) const;

  std::vector<TableSpec> specs_;
  std::vector<TableStats> stats_;
  std::vector<QueryTemplate> templates_;
  std::vector<std::string> columns_;            // global "table.column" names
  std::vector<std::size_t> column_table_;       // global column -> table index
  IndexConfig idx_;
  std::vector<Query> window_;
  std::vector<Query> eval_set_;
  std::size_t budget_;
  double freq_low_;
  double freq_high_;
  std::size_t window_size_;
  std::size_t batch_advance_;
  Rng stream_rng_;
};

// a_rule with probability alpha, a_random with beta, a_agent otherwise.
std::size_t schedule_action(std::size_t a_agent, std::size_t a_rule,
                            std::size_t a_random, double alpha, double beta,
                            Rng& rng);

/// Scheduled choice plus which branch the draw landed in (the proposals may
/// coincide, so the action alone does not identify the source).
struct ScheduledAction {
  std::size_t action = 0;
  ActionSource source = ActionSource::Agent;
};
ScheduledAction schedule_action_with_source(std::size_t a_agent,
                                            std::size_t a_rule,
                                            std::size_t a_random, double alpha,
                                            double beta, Rng& rng);

struct RunHistory {
  std::vector<HistoryRow> rows;

  // Mean Q-cost over the trailing `n` rows.
  double final_mean_q_cost(std::size_t n) const;
};

// Algorithm-faithful training loop: agent/rule/random proposals, scheduled
// choice, attenuation update, ELC reward, replay training, periodic EKB
// re-selection.
RunHistory train_eerl(IndexTuningEnv& env, const EerlConfig& config);

std::string run_history_to_csv(const RunHistory& history);

// The paper-shaped default environment: 8 tables, 18 templates.
struct EerlScenarioSetup {
  std::vector<TableSpec> specs;
  std::vector<TableStats> stats;
  std::vector<QueryTemplate> templates;
};
EerlScenarioSetup default_eerl_setup(u64 seed, std::size_t rows_per_table = 2000);

}  // namespace eel
