#include "eel/synthdb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace eel {

const ColumnSpec* TableSpec::find_column(const std::string& col) const {
  for (const auto& c : columns)
    if (c.name == col) return &c;
  return nullptr;
}

void TableSpec::validate() const {
  if (name.empty()) throw EngineError("table spec: name is empty");
  if (row_count < 1) throw EngineError("table spec: row_count must be >= 1");
  if (columns.empty()) throw EngineError("table spec: no columns");
  std::set<std::string> seen;
  for (const auto& c : columns) {
    if (c.name.empty()) throw EngineError("table spec: column name is empty");
    if (!seen.insert(c.name).second)
      throw EngineError("table spec: duplicate column name " + c.name);
    if (c.lo > c.hi)
      throw EngineError("table spec: column " + c.name + " has lo > hi");
    if (c.dist == Distribution::Zipf && c.zipf_s <= 0.0)
      throw EngineError("table spec: column " + c.name + " has zipf s <= 0");
    if (c.dist == Distribution::Gaussian && c.stddev < 0.0)
      throw EngineError("table spec: column " + c.name + " has stddev < 0");
  }
}

const std::vector<i64>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < spec.columns.size(); ++i)
    if (spec.columns[i].name == name) return columns[i];
  throw EngineError("unknown column: " + name);
}

namespace {

std::vector<i64> generate_column(const ColumnSpec& c, std::size_t rows, u64 seed) {
  Rng rng(seed);
  std::vector<i64> out;
  out.reserve(rows);
  switch (c.dist) {
    case Distribution::Uniform: {
      for (std::size_t i = 0; i < rows; ++i) out.push_back(rng.int_in(c.lo, c.hi));
      break;
    }
    case Distribution::Zipf: {
      // Inverse-CDF sampling over the ranked domain values lo..hi.
      std::size_t n = static_cast<std::size_t>(c.hi - c.lo) + 1;
      std::vector<double> cdf(n);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::pow(static_cast<double>(k + 1), -c.zipf_s);
        cdf[k] = acc;
      }
      for (std::size_t i = 0; i < rows; ++i) {
        double u = rng.uniform() * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf.begin());
        if (k >= n) k = n - 1;
        out.push_back(c.lo + static_cast<i64>(k));
      }
      break;
    }
    case Distribution::Gaussian: {
      for (std::size_t i = 0; i < rows; ++i) {
        double v = c.mean + c.stddev * rng.normal();
        i64 r = static_cast<i64>(std::llround(v));
        out.push_back(std::clamp(r, c.lo, c.hi));
      }
      break;
    }
  }
  return out;
}

bool matches(const Predicate& p, i64 x) {
  switch (p.op) {
    case PredOp::Eq: return x == p.v1;
    case PredOp::Le: return x <= p.v1;
    case PredOp::Ge: return x >= p.v1;
    case PredOp::Between: return p.v1 <= x && x <= p.v2;
  }
  return false;
}

}  // namespace

Table generate_table(const TableSpec& spec, u64 seed) {
  spec.validate();
  Table t;
  t.spec = spec;
  for (const auto& c : spec.columns) {
    u64 col_seed = seed ^ fnv1a(spec.name + "." + c.name);
    t.columns.push_back(generate_column(c, spec.row_count, col_seed));
  }
  return t;
}

std::size_t exact_cardinality(const Table& table, const Query& query) {
  std::vector<const std::vector<i64>*> cols;
  cols.reserve(query.predicates.size());
  for (const auto& p : query.predicates) cols.push_back(&table.column(p.column));

  std::size_t count = 0;
  for (std::size_t row = 0; row < table.spec.row_count; ++row) {
    bool all = true;
    for (std::size_t j = 0; j < query.predicates.size(); ++j) {
      if (!matches(query.predicates[j], (*cols[j])[row])) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

Histogram build_histogram(const Table& table, const std::string& column,
                          std::size_t bucket_count) {
  if (bucket_count < 1) throw EngineError("bucket_count must be >= 1");
  const auto& values = table.column(column);

  i64 lo = *std::min_element(values.begin(), values.end());
  i64 hi = *std::max_element(values.begin(), values.end());
  std::size_t range = static_cast<std::size_t>(hi - lo) + 1;
  // Strictly increasing bounds require at most one bucket per unit of range.
  std::size_t buckets = std::min(bucket_count, range);

  Histogram h;
  h.column = column;
  h.bounds.resize(buckets + 1);
  double width = static_cast<double>(range) / static_cast<double>(buckets);
  for (std::size_t i = 0; i <= buckets; ++i)
    h.bounds[i] = static_cast<double>(lo) + width * static_cast<double>(i);
  h.bounds.back() = static_cast<double>(hi) + 1.0;  // exact upper edge

  h.counts.assign(buckets, 0);
  for (i64 v : values) {
    auto b = static_cast<std::size_t>(
        (static_cast<double>(v - lo) * static_cast<double>(buckets)) /
        static_cast<double>(range));
    if (b >= buckets) b = buckets - 1;
    ++h.counts[b];
  }

  std::vector<i64> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  h.distinct_estimate = static_cast<std::size_t>(
      std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  return h;
}

TableStats build_stats(const Table& table, std::size_t bucket_count) {
  TableStats s;
  s.row_count = table.spec.row_count;
  for (const auto& c : table.spec.columns)
    s.histograms.push_back(build_histogram(table, c.name, bucket_count));
  return s;
}

std::size_t Histogram::row_count() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

double Histogram::selectivity(const Predicate& pred) const {
  double rows = static_cast<double>(row_count());
  if (rows == 0.0) return 0.0;
  double lo_edge = bounds.front();
  double hi_edge = bounds.back();

  if (pred.op == PredOp::Eq) {
    double v = static_cast<double>(pred.v1) + 0.5;
    if (v < lo_edge || v >= hi_edge) return 0.0;
    std::size_t b = static_cast<std::size_t>(
        std::upper_bound(bounds.begin(), bounds.end(), v) - bounds.begin());
    if (b == 0 || b > counts.size()) return 0.0;
    --b;
    double per_bucket_distinct = std::max(
        1.0, static_cast<double>(distinct_estimate) /
                 static_cast<double>(bucket_count()));
    return static_cast<double>(counts[b]) / rows / per_bucket_distinct;
  }

  // Range predicates: fractional overlap with the covered value interval,
  // integers treated as unit intervals [v, v+1).
  double a, b;
  switch (pred.op) {
    case PredOp::Le:
      a = lo_edge;
      b = static_cast<double>(pred.v1) + 1.0;
      break;
    case PredOp::Ge:
      a = static_cast<double>(pred.v1);
      b = hi_edge;
      break;
    default:  // Between
      a = static_cast<double>(pred.v1);
      b = static_cast<double>(pred.v2) + 1.0;
      break;
  }
  a = std::max(a, lo_edge);
  b = std::min(b, hi_edge);
  if (b <= a) return 0.0;

  double hit = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double left = std::max(a, bounds[i]);
    double right = std::min(b, bounds[i + 1]);
    if (right <= left) continue;
    hit += static_cast<double>(counts[i]) * (right - left) /
           (bounds[i + 1] - bounds[i]);
  }
  return std::clamp(hit / rows, 0.0, 1.0);
}

const Histogram* TableStats::find(const std::string& column) const {
  for (const auto& h : histograms)
    if (h.column == column) return &h;
  return nullptr;
}

double estimate_cardinality_rule(const TableStats& stats, const Query& query) {
  double sel = 1.0;
  for (const auto& p : query.predicates) {
    const Histogram* h = stats.find(p.column);
    if (!h) throw EngineError("no histogram for predicate column " + p.column);
    sel *= h->selectivity(p);
  }
  double est = sel * static_cast<double>(stats.row_count);
  return std::clamp(est, 0.0, static_cast<double>(stats.row_count));
}

double estimate_cardinality_coldstart(const Query& query, std::size_t row_count) {
  double sel = 1.0;
  for (const auto& p : query.predicates)
    sel *= (p.op == PredOp::Eq) ? 0.1 : (1.0 / 3.0);
  return sel * static_cast<double>(row_count);
}

double whatif_cost(const TableStats& stats, const Query& query,
                   const std::function<bool(const std::string&)>& indexed) {
  double rows = static_cast<double>(stats.row_count);
  double best_sel = -1.0;
  for (const auto& p : query.predicates) {
    if (!indexed(p.column)) continue;
    const Histogram* h = stats.find(p.column);
    if (!h) throw EngineError("no histogram for predicate column " + p.column);
    double s = h->selectivity(p);
    if (best_sel < 0.0 || s < best_sel) best_sel = s;
  }
  if (best_sel < 0.0) return rows;  // full scan
  double probe = std::ceil(std::log2(std::max(rows, 1.0)));
  // an index is only used when the probe beats the scan, so extra indexes
  // never raise the cost
  return std::min(rows, std::max(1.0, best_sel * rows) + probe);
}

void QueryLog::append(const Query& q, std::size_t true_cardinality) {
  entries_.push_back({q, true_cardinality});
}

std::optional<std::size_t> QueryLog::search(const Query& q) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (same_predicate_set(it->query, q)) return it->true_cardinality;
  return std::nullopt;
}

std::size_t IndexConfig::count_built() const {
  std::size_t n = 0;
  for (auto b : built) n += b ? 1 : 0;
  return n;
}

std::string table_to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t c = 0; c < table.spec.columns.size(); ++c) {
    if (c) os << ',';
    os << table.spec.columns[c].name;
  }
  os << '\n';
  for (std::size_t r = 0; r < table.spec.row_count; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) os << ',';
      os << table.columns[c][r];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace eel
