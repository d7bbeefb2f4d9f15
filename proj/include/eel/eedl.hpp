#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "eel/ekb.hpp"
#include "eel/elc.hpp"
#include "eel/learner.hpp"
#include "eel/sea.hpp"
#include "eel/synthdb.hpp"
#include "eel/workload.hpp"

namespace eel {

/// Sentinel for the disabled-gate ablation: every task uses the learned
/// estimate.
inline constexpr double kGateDisabled = std::numeric_limits<double>::infinity();

struct EedlConfig {
  double credibility_bound = 0.5;   // d
  std::size_t retrain_interval = 500;  // I, in processed tasks
  std::size_t pretrain_size = 5000;
  std::size_t pool_capacity = 10000;
  std::size_t minibatch = 64;
  std::size_t pretrain_epochs = 40;
  // sampled passes over the interval's worth of new labels per retrain, so
  // total optimization work per task does not depend on the interval choice
  double retrain_passes = 25.0;
  double learning_rate = 1e-3;
  std::size_t hidden = 64;
  double ekb_threshold = 0.75;
  u64 seed = 0;
};

struct OnlineRecord {
  std::size_t task_index = 0;
  Query query;
  double rule_estimate = 0.0;
  double learned_estimate = 0.0;
  double credibility = 0.0;
  Chosen chosen = Chosen::Rule;
  std::size_t true_cardinality = 0;
  double q_error_chosen = 1.0;
};

/// Held-out q-error snapshot of the learned regressor, taken after
/// pretraining (window 0) and after each retrain.
struct RetrainSnapshot {
  std::size_t window = 0;
  double median_q_error = 1.0;
  double mean_q_error = 1.0;
  double p99_q_error = 1.0;
  double learned_fraction = 0.0;  // chosen=learned share of the window
};

struct EedlResult {
  std::vector<OnlineRecord> records;
  std::vector<RetrainSnapshot> history;
  std::size_t retrains = 0;
};

/// End-to-end experience-enhanced pipeline for cardinality estimation over
/// one synthetic table.
class EedlPipeline {
 public:
  EedlPipeline(const Table& table, const TableStats& stats, EedlConfig config);

  // Rule estimators resolved from the KB selection.
  double rule_estimate(const Query& q) const;
  double learned_estimate(const Query& q) const;

  // Pre-trains the model on ELC weak labels. Throws when ELC yields nothing.
  void pretrain(const LabelSources& sources);

  // SEA-gated inference for one task.
  OnlineRecord infer(const Query& q, std::size_t task_index = 0) const;

  // Full online loop: infer, execute against the oracle, pool the true
  // label, retrain every I tasks, re-evaluate the EKB selection.
  // `heldout` drives the per-window q-error snapshots.
  EedlResult run_online(const std::vector<Query>& stream,
                        const std::vector<Query>& heldout,
                        const std::vector<FeatureTags>* demand_schedule = nullptr);

  // Fixed number of minibatch steps on uniformly sampled pooled examples.
  // Skips (with a false return) when the pool is empty.
  bool retrain();

  const Mlp& model() const { return model_; }
  const KnowledgeBase& kb() const { return kb_; }
  const std::string& selected_behavior() const;
  void set_demand(const FeatureTags& demand) { demand_ = demand; }

 private:
  RetrainSnapshot snapshot(std::size_t window, const std::vector<Query>& heldout,
                           double learned_fraction) const;

  const Table& table_;
  const TableStats& stats_;
  EedlConfig config_;
  Mlp model_;
  KnowledgeBase kb_;
  std::size_t selected_ = 0;
  FeatureTags demand_;
  ExperiencePool<LabeledExample> pool_;
  Rng rng_;
};

std::string online_records_to_csv(const std::vector<OnlineRecord>& records);
std::string retrain_history_to_csv(const std::vector<RetrainSnapshot>& history);

}  // namespace eel
