#include "eel/workload.hpp"

#include <algorithm>
#include <sstream>

namespace eel {

namespace {

i64 sample_value(const ColumnSpec& col, Rng& rng) {
  return rng.int_in(col.lo, col.hi);
}

Query instantiate(const QueryTemplate& t, const TableSpec& table, Rng& rng) {
  Query q;
  q.table = t.table;
  for (const auto& slot : t.slots) {
    const ColumnSpec* col = table.find_column(slot.column);
    if (!col) throw EngineError("template references unknown column " + slot.column);
    Predicate p;
    p.column = slot.column;
    p.op = slot.op;
    if (slot.op == PredOp::Between) {
      i64 a = slot.v1 ? *slot.v1 : sample_value(*col, rng);
      i64 b = slot.v2 ? *slot.v2 : sample_value(*col, rng);
      p.v1 = std::min(a, b);
      p.v2 = std::max(a, b);
    } else {
      p.v1 = slot.v1 ? *slot.v1 : sample_value(*col, rng);
      p.v2 = p.v1;
    }
    q.predicates.push_back(std::move(p));
  }
  return q;
}

double normalize(i64 v, const ColumnSpec& col) {
  if (col.hi == col.lo) return 0.0;
  double n = static_cast<double>(v - col.lo) /
             static_cast<double>(col.hi - col.lo);
  return std::clamp(n, 0.0, 1.0);
}

}  // namespace

std::vector<Query> generate_queries(const std::vector<QueryTemplate>& templates,
                                    const TableSpec& table, std::size_t n,
                                    u64 seed) {
  if (templates.empty()) throw EngineError("empty template list");
  if (n < 1) throw EngineError("query count must be >= 1");
  Rng rng(seed);
  std::vector<Query> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QueryTemplate& t = templates[rng.below(templates.size())];
    out.push_back(instantiate(t, table, rng));
  }
  return out;
}

std::vector<QueryTemplate> random_templates(const TableSpec& table,
                                            std::size_t count, u64 seed) {
  if (table.columns.empty()) throw EngineError("table has no columns");
  Rng rng(seed);
  std::vector<QueryTemplate> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    QueryTemplate t;
    t.table = table.name;
    std::size_t max_arity = std::min<std::size_t>(3, table.columns.size());
    std::size_t arity = 1 + rng.below(max_arity);
    // distinct columns per template, at most one predicate per column
    std::vector<std::size_t> cols(table.columns.size());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    for (std::size_t j = 0; j < arity; ++j) {
      std::size_t pick = j + rng.below(cols.size() - j);
      std::swap(cols[j], cols[pick]);
      TemplateSlot slot;
      slot.column = table.columns[cols[j]].name;
      switch (rng.below(4)) {
        case 0: slot.op = PredOp::Eq; break;
        case 1: slot.op = PredOp::Le; break;
        case 2: slot.op = PredOp::Ge; break;
        default: slot.op = PredOp::Between; break;
      }
      t.slots.push_back(std::move(slot));
    }
    out.push_back(std::move(t));
  }
  return out;
}

FeatureVector featurize(const Query& query, const TableSpec& schema) {
  FeatureVector fv;
  fv.values.assign(3 * schema.columns.size(), 0.0);
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    fv.values[3 * c + 0] = 0.0;
    fv.values[3 * c + 1] = 0.0;
    fv.values[3 * c + 2] = 1.0;
  }
  for (const auto& p : query.predicates) {
    std::size_t c = 0;
    bool found = false;
    for (; c < schema.columns.size(); ++c) {
      if (schema.columns[c].name == p.column) {
        found = true;
        break;
      }
    }
    if (!found) throw EngineError("query references unknown column " + p.column);
    const ColumnSpec& col = schema.columns[c];
    double lo, hi;
    switch (p.op) {
      case PredOp::Eq:
        lo = hi = normalize(p.v1, col);
        break;
      case PredOp::Le:
        lo = 0.0;
        hi = normalize(p.v1, col);
        break;
      case PredOp::Ge:
        lo = normalize(p.v1, col);
        hi = 1.0;
        break;
      default:  // Between
        lo = normalize(p.v1, col);
        hi = normalize(p.v2, col);
        break;
    }
    fv.values[3 * c + 0] = 1.0;
    fv.values[3 * c + 1] = lo;
    fv.values[3 * c + 2] = hi;
  }
  return fv;
}

std::vector<double> workload_frequency(const std::vector<Query>& queries,
                                       const std::vector<std::string>& columns) {
  std::vector<double> freq(columns.size(), 0.0);
  if (queries.empty()) return freq;
  for (const auto& q : queries) {
    for (const auto& p : q.predicates) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == p.column) {
          freq[c] += 1.0;
          break;
        }
      }
    }
  }
  for (double& f : freq) f /= static_cast<double>(queries.size());
  return freq;
}

std::string template_to_string(const QueryTemplate& t) {
  if (t.slots.empty()) return "*";
  std::ostringstream os;
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    const TemplateSlot& s = t.slots[i];
    if (i) os << " AND ";
    os << s.column << ' ' << pred_op_name(s.op) << ' ';
    if (s.v1) os << *s.v1; else os << '?';
    if (s.op == PredOp::Between) {
      os << ' ';
      if (s.v2) os << *s.v2; else os << '?';
    }
  }
  return os.str();
}

QueryTemplate template_from_string(const std::string& table,
                                   const std::string& line) {
  QueryTemplate t;
  t.table = table;
  std::string trimmed = line;
  auto b = trimmed.find_first_not_of(" \t");
  auto e = trimmed.find_last_not_of(" \t");
  trimmed = (b == std::string::npos) ? "" : trimmed.substr(b, e - b + 1);
  if (trimmed.empty() || trimmed == "*") return t;

  std::istringstream is(trimmed);
  auto read_value = [&](std::optional<i64>& out) {
    std::string v;
    if (!(is >> v)) throw EngineError("truncated template: " + line);
    if (v == "?") {
      out = std::nullopt;
    } else {
      out = std::stoll(v);
    }
  };
  while (is) {
    TemplateSlot slot;
    if (!(is >> slot.column)) break;
    std::string op;
    if (!(is >> op)) throw EngineError("truncated template: " + line);
    slot.op = pred_op_from_name(op);
    read_value(slot.v1);
    if (slot.op == PredOp::Between) read_value(slot.v2);
    t.slots.push_back(std::move(slot));
    std::string tok;
    if (is >> tok) {
      if (tok != "AND") throw EngineError("expected AND, got: " + tok);
    } else {
      break;
    }
  }
  return t;
}

}  // namespace eel
