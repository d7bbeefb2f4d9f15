#include "eel/elc.hpp"

#include <sstream>

namespace eel {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Log: return "log";
    case Provenance::Rule: return "rule";
    case Provenance::Execution: return "execution";
  }
  return "?";
}

TrainingSet collect_labels(const TableSpec& schema, const LabelSources& sources,
                           std::size_t target_size, u64 seed) {
  if (target_size < 1) throw EngineError("collect_labels: target_size must be >= 1");
  bool has_log = sources.log != nullptr;
  bool has_rule = static_cast<bool>(sources.rule);
  bool has_templates =
      sources.templates != nullptr && !sources.templates->empty();
  if (!has_log && !has_rule && !has_templates)
    throw EngineError("no label source");

  TrainingSet ts;
  ts.target_size = target_size;

  // 1. Log searching: harvest every matching entry for this table.
  if (has_log) {
    for (const auto& entry : sources.log->entries()) {
      if (entry.query.table != schema.name) continue;
      ts.examples.push_back({featurize(entry.query, schema),
                             static_cast<double>(entry.true_cardinality),
                             Provenance::Log});
      if (!ts.lacking()) break;
    }
  }

  // 2. Manual generation: top up with rule-labeled generated queries.
  if (ts.lacking() && has_rule && has_templates) {
    std::size_t need = target_size - ts.examples.size();
    auto queries = generate_queries(*sources.templates, schema, need, seed);
    for (const auto& q : queries)
      ts.examples.push_back(
          {featurize(q, schema), sources.rule(q), Provenance::Rule});
  }

  // 3. Waiting task: the caller substitutes the rule method online.
  if (ts.lacking()) ts.waiting = true;
  return ts;
}

double label_single(const std::vector<Query>& window, const IndexConfig& next_idx,
                    const CostFn& cost_fn) {
  if (window.empty())
    throw EngineError("label_single: empty workload window");
  double qc = q_cost(window, WorkloadWeights::uniform(window.size()), next_idx,
                     cost_fn);
  return rl_reward(qc);
}

TrainingSet label_by_execution(const std::vector<Query>& queries,
                               const Table& table) {
  TrainingSet ts;
  ts.target_size = queries.size();
  for (const auto& q : queries)
    ts.examples.push_back({featurize(q, table.spec),
                           static_cast<double>(exact_cardinality(table, q)),
                           Provenance::Execution});
  return ts;
}

std::string training_set_to_csv(const TrainingSet& ts) {
  std::ostringstream os;
  std::size_t width = ts.examples.empty() ? 0 : ts.examples[0].features.size();
  for (std::size_t i = 0; i < width; ++i) os << "feature_" << i << ',';
  os << "label,provenance\n";
  os.precision(17);
  for (const auto& ex : ts.examples) {
    for (double v : ex.features.values) os << v << ',';
    os << ex.label << ',' << provenance_name(ex.provenance) << '\n';
  }
  return os.str();
}

}  // namespace eel
