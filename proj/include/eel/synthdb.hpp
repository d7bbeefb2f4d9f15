#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eel/common.hpp"
#include "eel/query.hpp"

namespace eel {

enum class Distribution { Uniform, Zipf, Gaussian };

struct ColumnSpec {
  std::string name;
  Distribution dist = Distribution::Uniform;
  double zipf_s = 1.0;     // Zipf only
  double mean = 0.0;       // Gaussian only
  double stddev = 1.0;     // Gaussian only
  i64 lo = 0;
  i64 hi = 0;
};

struct TableSpec {
  std::string name;
  std::vector<ColumnSpec> columns;
  std::size_t row_count = 0;

  const ColumnSpec* find_column(const std::string& name) const;
  // Throws EngineError naming the offending field on violation.
  void validate() const;
};

/// Columnar integer table, immutable after generation.
struct Table {
  TableSpec spec;
  std::vector<std::vector<i64>> columns;  // one array per spec column

  const std::vector<i64>& column(const std::string& name) const;
};

/// Equi-width histogram over one column's observed min..max range. Buckets
/// partition the half-open value interval [min, max+1).
struct Histogram {
  std::string column;
  std::vector<double> bounds;       // bucket_count + 1 strictly increasing edges
  std::vector<std::size_t> counts;  // per-bucket row counts
  std::size_t distinct_estimate = 1;

  std::size_t bucket_count() const { return counts.size(); }
  std::size_t row_count() const;
  // Estimated fraction of rows satisfying the predicate, in [0, 1].
  double selectivity(const Predicate& pred) const;
};

struct TableStats {
  std::size_t row_count = 0;
  std::vector<Histogram> histograms;

  const Histogram* find(const std::string& column) const;
};

/// Append-only log of executed queries with their true cardinalities.
class QueryLog {
 public:
  struct Entry {
    Query query;
    std::size_t true_cardinality;
  };

  void append(const Query& q, std::size_t true_cardinality);
  // Most recent exact-match entry (order-insensitive predicate set).
  std::optional<std::size_t> search(const Query& q) const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Bitmap of built single-column indexes over an ordered column universe.
struct IndexConfig {
  std::vector<std::uint8_t> built;

  explicit IndexConfig(std::size_t num_columns = 0) : built(num_columns, 0) {}
  std::size_t size() const { return built.size(); }
  std::size_t count_built() const;
  bool has(std::size_t column) const { return built.at(column) != 0; }
  void set(std::size_t column, bool on) { built.at(column) = on ? 1 : 0; }

  bool operator==(const IndexConfig&) const = default;
};

Table generate_table(const TableSpec& spec, u64 seed);

std::size_t exact_cardinality(const Table& table, const Query& query);

Histogram build_histogram(const Table& table, const std::string& column,
                          std::size_t bucket_count);

TableStats build_stats(const Table& table, std::size_t bucket_count = 64);

// Histogram-backed estimate under attribute independence, clamped to
// [0, row_count]. Requires one histogram per predicate column.
double estimate_cardinality_rule(const TableStats& stats, const Query& query);

// No-statistics defaults: 1/10 per equality predicate, 1/3 per range.
double estimate_cardinality_coldstart(const Query& query, std::size_t row_count);

// Analytic what-if cost in abstract units. `indexed` reports whether a
// single-column index exists on a named predicate column.
double whatif_cost(const TableStats& stats, const Query& query,
                   const std::function<bool(const std::string&)>& indexed);

// CSV with a header row of column names, one integer per cell.
std::string table_to_csv(const Table& table);

}  // namespace eel
