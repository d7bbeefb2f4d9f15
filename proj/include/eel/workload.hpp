#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eel/common.hpp"
#include "eel/query.hpp"
#include "eel/synthdb.hpp"

namespace eel {

/// One template slot: fixed values stay as written, unset values are sampled
/// uniformly from the column domain at generation time.
struct TemplateSlot {
  std::string column;
  PredOp op = PredOp::Eq;
  std::optional<i64> v1;
  std::optional<i64> v2;  // Between only
};

struct QueryTemplate {
  std::string table;
  std::vector<TemplateSlot> slots;
};

/// Fixed-length featurization: per column (active flag, normalized lower
/// bound, normalized upper bound); inactive columns encode (0, 0, 1).
struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

std::vector<Query> generate_queries(const std::vector<QueryTemplate>& templates,
                                    const TableSpec& table, std::size_t n,
                                    u64 seed);

// Seeded pool of random templates over `table`, arity 1..3 per template.
std::vector<QueryTemplate> random_templates(const TableSpec& table,
                                            std::size_t count, u64 seed);

FeatureVector featurize(const Query& query, const TableSpec& schema);

// Per-column fraction of queries carrying a predicate on that column.
std::vector<double> workload_frequency(const std::vector<Query>& queries,
                                       const std::vector<std::string>& columns);

// Template grammar is the query grammar with `?` placeholders for sampled
// values. One template per line.
std::string template_to_string(const QueryTemplate& t);
QueryTemplate template_from_string(const std::string& table,
                                   const std::string& line);

}  // namespace eel
