#include "eel/eedl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eel/experiment.hpp"
#include "eel/metrics.hpp"

namespace eel {

namespace {

KnowledgeBase default_cardinality_kb() {
  auto reg = BehaviorRegistry::with_builtins();
  KnowledgeBase kb;
  kb.add(standardize({{"statistics", "query"},
                      "cardinality",
                      {{"buckets", 64.0}},
                      {"cardinality", "accuracy", "relational", "online", "multi"},
                      "histogram-estimator"},
                     reg));
  kb.add(standardize({{"query"},
                      "cardinality",
                      {},
                      {"cardinality", "time", "relational", "offline", "single"},
                      "coldstart-estimator"},
                     reg));
  return kb;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile_of(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  auto idx = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1));
  return v[idx];
}

}  // namespace

EedlPipeline::EedlPipeline(const Table& table, const TableStats& stats,
                           EedlConfig config)
    : table_(table),
      stats_(stats),
      config_(config),
      model_({3 * table.spec.columns.size(), config.hidden, 1}, config.seed),
      kb_(default_cardinality_kb()),
      pool_(config.pool_capacity),
      rng_(config.seed ^ 0x9e3779b97f4a7c15ull) {
  demand_ = tags_from_words(
      {"cardinality", "accuracy", "relational", "online", "multi"});
  selected_ = kb_.match_index(demand_);
}

const std::string& EedlPipeline::selected_behavior() const {
  return kb_.entries()[selected_].behavior_id;
}

double EedlPipeline::rule_estimate(const Query& q) const {
  const std::string& behavior = selected_behavior();
  double est;
  if (behavior == "histogram-estimator") {
    est = estimate_cardinality_rule(stats_, q);
  } else {
    est = estimate_cardinality_coldstart(q, table_.spec.row_count);
  }
  return std::max(est, 1.0);
}

double EedlPipeline::learned_estimate(const Query& q) const {
  auto fv = featurize(q, table_.spec);
  double log_card = model_.predict(fv.values)[0];
  double est = std::exp(log_card);
  return std::clamp(est, 1.0, static_cast<double>(table_.spec.row_count));
}

void EedlPipeline::pretrain(const LabelSources& sources) {
  TrainingSet ts =
      collect_labels(table_.spec, sources, config_.pretrain_size, config_.seed);
  if (ts.examples.empty())
    throw EngineError("pretrain: label collection produced no examples");

  std::vector<Sample> samples;
  samples.reserve(ts.examples.size());
  for (const auto& ex : ts.examples)
    samples.push_back(
        {ex.features.values, {std::log(std::max(ex.label, 1.0))}, {}});

  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t epoch = 0; epoch < config_.pretrain_epochs; ++epoch) {
    // seeded Fisher-Yates shuffle per epoch
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng_.below(i)]);
    for (std::size_t start = 0; start < order.size();
         start += config_.minibatch) {
      std::size_t end = std::min(order.size(), start + config_.minibatch);
      std::vector<Sample> batch;
      batch.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) batch.push_back(samples[order[i]]);
      model_.train_batch(batch, config_.learning_rate);
    }
  }
  // the replay pool starts from the collected training set; online labels
  // join it so retraining mixes weak and true labels instead of forgetting
  // the pretraining knowledge
  for (const auto& ex : ts.examples) pool_.push(ex);
}

OnlineRecord EedlPipeline::infer(const Query& q, std::size_t task_index) const {
  OnlineRecord rec;
  rec.task_index = task_index;
  rec.query = q;
  double c_r, c_l;
  try {
    c_r = rule_estimate(q);
  } catch (const EngineError&) {
    // rule failure: fall back to the cold-start estimator
    c_r = std::max(estimate_cardinality_coldstart(q, table_.spec.row_count), 1.0);
  }
  c_l = learned_estimate(q);
  CredibilityDecision dec = choose(c_l, c_r, config_.credibility_bound);
  rec.rule_estimate = c_r;
  rec.learned_estimate = c_l;
  rec.credibility = dec.credibility;
  rec.chosen = dec.chosen;
  return rec;
}

bool EedlPipeline::retrain() {
  if (pool_.size() == 0) return false;
  auto batches = static_cast<std::size_t>(std::max(
      1.0, std::ceil(static_cast<double>(config_.retrain_interval) *
                     config_.retrain_passes /
                     static_cast<double>(config_.minibatch))));
  for (std::size_t b = 0; b < batches; ++b) {
    auto drawn = pool_.sample(config_.minibatch, rng_);
    std::vector<Sample> batch;
    batch.reserve(drawn.size());
    for (const auto& ex : drawn)
      batch.push_back(
          {ex.features.values, {std::log(std::max(ex.label, 1.0))}, {}});
    model_.train_batch(batch, config_.learning_rate);
  }
  return true;
}

RetrainSnapshot EedlPipeline::snapshot(std::size_t window,
                                       const std::vector<Query>& heldout,
                                       double learned_fraction) const {
  RetrainSnapshot snap;
  snap.window = window;
  snap.learned_fraction = learned_fraction;
  // tracks the learned regressor itself: retraining acts on the model, the
  // gate's per-task choices are already in the online records
  std::vector<double> errs;
  errs.reserve(heldout.size());
  for (const auto& q : heldout) {
    double truth = static_cast<double>(exact_cardinality(table_, q));
    errs.push_back(q_error(learned_estimate(q), truth));
  }
  snap.median_q_error = median_of(errs);
  double sum = 0.0;
  for (double e : errs) sum += e;
  snap.mean_q_error = errs.empty() ? 0.0 : sum / static_cast<double>(errs.size());
  snap.p99_q_error = percentile_of(errs, 0.99);
  return snap;
}

EedlResult EedlPipeline::run_online(
    const std::vector<Query>& stream, const std::vector<Query>& heldout,
    const std::vector<FeatureTags>* demand_schedule) {
  if (demand_schedule && demand_schedule->size() != stream.size())
    throw EngineError("run_online: demand schedule length mismatch");

  EedlResult result;
  result.history.push_back(snapshot(0, heldout, 0.0));

  std::size_t window_learned = 0;
  std::size_t window_tasks = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (demand_schedule) demand_ = (*demand_schedule)[i];

    OnlineRecord rec = infer(stream[i], i);
    std::size_t truth = exact_cardinality(table_, stream[i]);
    rec.true_cardinality = truth;
    double est = rec.chosen == Chosen::Learned ? rec.learned_estimate
                                               : rec.rule_estimate;
    rec.q_error_chosen = q_error(est, static_cast<double>(truth));
    if (rec.chosen == Chosen::Learned) ++window_learned;
    ++window_tasks;
    result.records.push_back(rec);

    // real execution stand-in: the oracle label feeds the experience pool
    pool_.push({featurize(stream[i], table_.spec),
                static_cast<double>(truth), Provenance::Execution});

    if ((i + 1) % config_.retrain_interval == 0) {
      if (retrain()) ++result.retrains;
      if (needs_update(kb_.entries()[selected_], demand_, config_.ekb_threshold))
        selected_ = kb_.match_index(demand_);
      double frac = window_tasks
                        ? static_cast<double>(window_learned) /
                              static_cast<double>(window_tasks)
                        : 0.0;
      result.history.push_back(snapshot(result.retrains, heldout, frac));
      window_learned = 0;
      window_tasks = 0;
    }
  }
  return result;
}

std::string online_records_to_csv(const std::vector<OnlineRecord>& records) {
  std::ostringstream os;
  os << "task_index,query,c_rule,c_learned,credibility,chosen,true_cardinality,"
        "q_error\n";
  for (const auto& r : records) {
    os << r.task_index << ",\"" << query_to_string(r.query) << "\","
       << format_real(r.rule_estimate) << ',' << format_real(r.learned_estimate)
       << ',' << format_real(r.credibility) << ','
       << (r.chosen == Chosen::Learned ? "learned" : "rule") << ','
       << r.true_cardinality << ',' << format_real(r.q_error_chosen) << '\n';
  }
  return os.str();
}

std::string retrain_history_to_csv(const std::vector<RetrainSnapshot>& history) {
  std::ostringstream os;
  os << "window,median_q_error,mean_q_error,p99_q_error,learned_fraction\n";
  for (const auto& s : history) {
    os << s.window << ',' << format_real(s.median_q_error) << ','
       << format_real(s.mean_q_error) << ',' << format_real(s.p99_q_error)
       << ',' << format_real(s.learned_fraction) << '\n';
  }
  return os.str();
}

}  // namespace eel
