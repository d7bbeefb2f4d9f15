#include "eel/eerl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eel/elc.hpp"
#include "eel/experiment.hpp"

namespace eel {

void ExplorationSchedule::validate() const {
  if (alpha0 < 0.0 || beta < 0.0)
    throw EngineError("schedule: rates must be >= 0");
  if (alpha0 + beta > 1.0 + 1e-12)
    throw EngineError("schedule: alpha + beta must be <= 1");
  if (w < 0.0) throw EngineError("schedule: attenuation magnitude must be >= 0");
  if (w > 0.0 && c1 >= c2)
    throw EngineError("schedule: c1 must be < c2");
}

double ExplorationSchedule::alpha_at(std::size_t iter) const {
  double a = alpha0;
  if (w > 0.0) {
    double shift;
    if (iter < c1) {
      shift = 0.0;
    } else if (iter <= c2) {
      shift = w * static_cast<double>(iter - c1) / static_cast<double>(c2 - c1);
    } else {
      shift = w;
    }
    a = decrease ? alpha0 - shift : alpha0 + shift;
  }
  return std::clamp(a, 0.0, 1.0 - beta);
}

const char* action_source_name(ActionSource s) {
  switch (s) {
    case ActionSource::Agent: return "agent";
    case ActionSource::Rule: return "rule";
    case ActionSource::Random: return "random";
  }
  return "?";
}

IndexTuningEnv::IndexTuningEnv(std::vector<TableSpec> specs,
                               std::vector<TableStats> stats,
                               std::vector<QueryTemplate> templates,
                               const EerlConfig& config, u64 stream_seed)
    : specs_(std::move(specs)),
      stats_(std::move(stats)),
      templates_(std::move(templates)),
      idx_(0),
      budget_(config.index_budget),
      freq_low_(config.freq_low),
      freq_high_(config.freq_high),
      window_size_(config.window),
      batch_advance_(config.batch_advance),
      stream_rng_(stream_seed) {
  if (specs_.size() != stats_.size())
    throw EngineError("index env: specs / stats size mismatch");
  if (templates_.empty()) throw EngineError("index env: no query templates");
  for (std::size_t t = 0; t < specs_.size(); ++t) {
    for (const auto& c : specs_[t].columns) {
      columns_.push_back(specs_[t].name + "." + c.name);
      column_table_.push_back(t);
    }
  }
  idx_ = IndexConfig(columns_.size());

  auto draw = [&]() {
    const QueryTemplate& t = templates_[stream_rng_.below(templates_.size())];
    for (std::size_t i = 0; i < specs_.size(); ++i)
      if (specs_[i].name == t.table)
        return generate_queries({t}, specs_[i], 1, stream_rng_.next_u64())[0];
    throw EngineError("index env: template references unknown table " + t.table);
  };
  for (std::size_t i = 0; i < config.eval_queries; ++i) eval_set_.push_back(draw());
  for (std::size_t i = 0; i < window_size_; ++i) window_.push_back(draw());
}

void IndexTuningEnv::refill_window() {
  std::size_t drop = std::min(batch_advance_, window_.size());
  window_.erase(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(drop));
  while (window_.size() < window_size_) {
    const QueryTemplate& t = templates_[stream_rng_.below(templates_.size())];
    bool found = false;
    for (std::size_t i = 0; i < specs_.size(); ++i) {
      if (specs_[i].name == t.table) {
        window_.push_back(
            generate_queries({t}, specs_[i], 1, stream_rng_.next_u64())[0]);
        found = true;
        break;
      }
    }
    if (!found)
      throw EngineError("index env: template references unknown table " + t.table);
  }
}

std::vector<double> IndexTuningEnv::frequencies() const {
  std::vector<double> freq(columns_.size(), 0.0);
  if (window_.empty()) return freq;
  for (const auto& q : window_) {
    for (const auto& p : q.predicates) {
      std::string global = q.table + "." + p.column;
      for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (columns_[c] == global) {
          freq[c] += 1.0;
          break;
        }
      }
    }
  }
  for (double& f : freq) f /= static_cast<double>(window_.size());
  return freq;
}

std::vector<double> IndexTuningEnv::state() const {
  std::vector<double> s = frequencies();
  for (std::size_t c = 0; c < idx_.size(); ++c)
    s.push_back(idx_.has(c) ? 1.0 : 0.0);
  return s;
}

double IndexTuningEnv::cost(const Query& q, const IndexConfig& idx) const {
  std::size_t table = specs_.size();
  for (std::size_t i = 0; i < specs_.size(); ++i)
    if (specs_[i].name == q.table) {
      table = i;
      break;
    }
  if (table == specs_.size())
    throw EngineError("index env: query on unknown table " + q.table);
  auto indexed = [&](const std::string& col) {
    std::string global = q.table + "." + col;
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (columns_[c] == global) return idx.has(c);
    return false;
  };
  return whatif_cost(stats_[table], q, indexed);
}

double IndexTuningEnv::q_cost_of(const IndexConfig& idx) const {
  return q_cost(eval_set_, WorkloadWeights::uniform(eval_set_.size()), idx,
                [this](const Query& q, const IndexConfig& i) { return cost(q, i); });
}

IndexTuningEnv::StepResult IndexTuningEnv::step(std::size_t action) {
  if (action >= action_count())
    throw EngineError("index env: action out of range");
  bool penalized = false;
  if (action < num_columns()) {
    if (!idx_.has(action)) {
      if (idx_.count_built() >= budget_) {
        penalized = true;  // over-budget build becomes a penalized no-op
      } else {
        idx_.set(action, true);
      }
    }
  } else if (action < 2 * num_columns()) {
    idx_.set(action - num_columns(), false);
  }
  refill_window();

  StepResult res;
  res.q_cost = q_cost_of(idx_);
  res.reward = penalized
                   ? -0.01
                   : label_single(eval_set_, idx_,
                                  [this](const Query& q, const IndexConfig& i) {
                                    return cost(q, i);
                                  });
  res.next_state = state();
  return res;
}

std::size_t IndexTuningEnv::rule_action() const {
  auto freq = frequencies();
  // rule iii: drop an index on an infrequent column
  for (std::size_t c = 0; c < idx_.size(); ++c)
    if (idx_.has(c) && freq[c] < freq_low_) return num_columns() + c;
  // rule i: build the most frequent unindexed column
  std::size_t best = columns_.size();
  double best_freq = 0.0;
  for (std::size_t c = 0; c < idx_.size(); ++c) {
    if (idx_.has(c)) continue;
    if (freq[c] > best_freq) {
      best_freq = freq[c];
      best = c;
    }
  }
  if (best < columns_.size() && best_freq >= freq_high_ &&
      idx_.count_built() < budget_)
    return best;
  // rule ii (duplicate deletion) cannot trigger under a bitmap
  return noop_action();
}

ScheduledAction schedule_action_with_source(std::size_t a_agent,
                                            std::size_t a_rule,
                                            std::size_t a_random, double alpha,
                                            double beta, Rng& rng) {
  if (alpha < 0.0 || beta < 0.0 || alpha + beta > 1.0 + 1e-12)
    throw EngineError("schedule_action: invalid rates");
  double u = rng.uniform();
  if (u < alpha) return {a_rule, ActionSource::Rule};
  if (u < alpha + beta) return {a_random, ActionSource::Random};
  return {a_agent, ActionSource::Agent};
}

std::size_t schedule_action(std::size_t a_agent, std::size_t a_rule,
                            std::size_t a_random, double alpha, double beta,
                            Rng& rng) {
  return schedule_action_with_source(a_agent, a_rule, a_random, alpha, beta, rng)
      .action;
}

double RunHistory::final_mean_q_cost(std::size_t n) const {
  if (rows.empty()) throw EngineError("empty run history");
  std::size_t take = std::min(n, rows.size());
  double sum = 0.0;
  for (std::size_t i = rows.size() - take; i < rows.size(); ++i)
    sum += rows[i].q_cost;
  return sum / static_cast<double>(take);
}

namespace {

KnowledgeBase default_index_kb() {
  auto reg = BehaviorRegistry::with_builtins();
  KnowledgeBase kb;
  kb.add(standardize({{"table", "workload"},
                      "indexes",
                      {{"freq_high", 0.2}},
                      {"index", "cost", "relational", "online", "multi"},
                      "index-frequent-build"},
                     reg));
  kb.add(standardize({{"table", "workload"},
                      "indexes",
                      {{"freq_low", 0.05}},
                      {"index", "cost", "relational", "offline", "multi"},
                      "index-drop-infrequent"},
                     reg));
  return kb;
}

std::size_t argmax_action(const std::vector<double>& q) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i] > q[best]) best = i;
  return best;
}

}  // namespace

RunHistory train_eerl(IndexTuningEnv& env, const EerlConfig& config) {
  config.schedule.validate();

  Mlp agent({env.state_dim(), config.hidden, env.action_count()}, config.seed);
  ExperiencePool<Experience> pool(config.pool_capacity);
  Rng rng(config.seed ^ 0xda3e39cb94b95bdbull);

  KnowledgeBase kb = default_index_kb();
  FeatureTags demand =
      tags_from_words({"index", "cost", "relational", "online", "multi"});
  std::size_t selected = kb.match_index(demand);

  RunHistory history;
  std::vector<double> s = env.state();
  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    std::size_t a_agent = argmax_action(agent.predict(s));
    std::size_t a_rule = env.rule_action();
    std::size_t a_random = rng.below(env.action_count());

    double alpha = config.schedule.alpha_at(iter);
    auto [a, source] = schedule_action_with_source(a_agent, a_rule, a_random,
                                                   alpha, config.schedule.beta,
                                                   rng);

    auto step = env.step(a);
    pool.push({s, a, step.reward, step.next_state});

    // one-step TD target on the taken action, online network bootstrap
    auto batch_entries = pool.sample(config.minibatch, rng);
    std::vector<Sample> batch;
    batch.reserve(batch_entries.size());
    for (const auto& exp : batch_entries) {
      auto next_q = agent.predict(exp.next_state);
      double target = exp.reward + config.gamma * *std::max_element(next_q.begin(),
                                                                    next_q.end());
      Sample sample;
      sample.input = exp.state;
      sample.target.assign(env.action_count(), 0.0);
      sample.mask.assign(env.action_count(), 0);
      sample.target[exp.action] = target;
      sample.mask[exp.action] = 1;
      batch.push_back(std::move(sample));
    }
    agent.train_batch(batch, config.learning_rate);

    history.rows.push_back({iter, source, a, step.reward, step.q_cost});
    s = std::move(step.next_state);

    if (config.kb_interval > 0 && (iter + 1) % config.kb_interval == 0) {
      if (needs_update(kb.entries()[selected], demand, config.ekb_threshold))
        selected = kb.match_index(demand);
    }
  }
  return history;
}

std::string run_history_to_csv(const RunHistory& history) {
  std::ostringstream os;
  os << "iter,source,action,reward,q_cost\n";
  for (const auto& r : history.rows) {
    os << r.iter << ',' << action_source_name(r.source) << ',' << r.action << ','
       << format_real(r.reward) << ',' << format_real(r.q_cost) << '\n';
  }
  return os.str();
}

EerlScenarioSetup default_eerl_setup(u64 seed, std::size_t rows_per_table) {
  EerlScenarioSetup setup;
  // Eight tables with four integer columns each; the first column of the
  // first three tables carries most of the workload.
  for (std::size_t t = 0; t < 8; ++t) {
    TableSpec spec;
    spec.name = "t" + std::to_string(t + 1);
    spec.row_count = rows_per_table;
    const char* names[4] = {"a", "b", "c", "d"};
    for (std::size_t c = 0; c < 4; ++c) {
      ColumnSpec col;
      col.name = names[c];
      col.lo = 1;
      col.hi = 1000;
      if (c == 1) {
        col.dist = Distribution::Zipf;
        col.zipf_s = 1.1;
      } else if (c == 2) {
        col.dist = Distribution::Gaussian;
        col.mean = 500.0;
        col.stddev = 150.0;
      } else {
        col.dist = Distribution::Uniform;
      }
      spec.columns.push_back(col);
    }
    setup.specs.push_back(std::move(spec));
  }

  for (const auto& spec : setup.specs) {
    Table table = generate_table(spec, seed ^ fnv1a(spec.name));
    setup.stats.push_back(build_stats(table));
  }

  // 18 templates: hot equality predicates on t1.a (x6), t2.a (x5), t3.a (x4),
  // plus three cold single-predicate templates.
  auto eq_slot = [](const std::string& col) {
    TemplateSlot s;
    s.column = col;
    s.op = PredOp::Eq;
    return s;
  };
  auto range_slot = [](const std::string& col, PredOp op) {
    TemplateSlot s;
    s.column = col;
    s.op = op;
    return s;
  };
  auto add = [&](const std::string& table, std::vector<TemplateSlot> slots) {
    QueryTemplate t;
    t.table = table;
    t.slots = std::move(slots);
    setup.templates.push_back(std::move(t));
  };
  for (int i = 0; i < 6; ++i) {
    if (i % 2 == 0)
      add("t1", {eq_slot("a")});
    else
      add("t1", {eq_slot("a"), range_slot("b", PredOp::Le)});
  }
  for (int i = 0; i < 5; ++i) {
    if (i % 2 == 0)
      add("t2", {eq_slot("a")});
    else
      add("t2", {eq_slot("a"), range_slot("c", PredOp::Ge)});
  }
  for (int i = 0; i < 4; ++i) {
    if (i % 2 == 0)
      add("t3", {eq_slot("a")});
    else
      add("t3", {eq_slot("a"), range_slot("d", PredOp::Between)});
  }
  add("t4", {range_slot("b", PredOp::Le)});
  add("t5", {range_slot("c", PredOp::Ge)});
  add("t6", {range_slot("d", PredOp::Between)});

  return setup;
}

}  // namespace eel
