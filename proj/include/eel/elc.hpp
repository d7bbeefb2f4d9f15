#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eel/metrics.hpp"
#include "eel/synthdb.hpp"
#include "eel/workload.hpp"

namespace eel {

enum class Provenance { Log, Rule, Execution };

const char* provenance_name(Provenance p);

struct LabeledExample {
  FeatureVector features;
  double label = 0.0;  // cardinality, >= 0
  Provenance provenance = Provenance::Rule;
};

struct TrainingSet {
  std::vector<LabeledExample> examples;
  std::size_t target_size = 0;
  // Set when no source could fill the set: callers fall back to the rule
  // method online until user-generated labels accumulate.
  bool waiting = false;

  bool lacking() const { return examples.size() < target_size; }
};

/// Label sources for collect_labels, in Algorithm order: log first, rule
/// generation second, waiting-task fallback last.
struct LabelSources {
  const QueryLog* log = nullptr;
  std::function<double(const Query&)> rule;  // empty = no rule available
  const std::vector<QueryTemplate>* templates = nullptr;
};

// Experience-enhanced label collection. Harvests log matches, tops up with
// rule-labeled generated queries, and flags `waiting` when still short.
// Throws "no label source" when every source is absent.
TrainingSet collect_labels(const TableSpec& schema, const LabelSources& sources,
                           std::size_t target_size, u64 seed);

// Single-label mode: RL reward for an index revision, computed entirely from
// the what-if cost model over the recent workload window.
double label_single(const std::vector<Query>& window, const IndexConfig& next_idx,
                    const CostFn& cost_fn);

// Slow baseline: true labels via the exact-cardinality oracle.
TrainingSet label_by_execution(const std::vector<Query>& queries,
                               const Table& table);

// CSV: feature_0,...,feature_k,label,provenance
std::string training_set_to_csv(const TrainingSet& ts);

}  // namespace eel
