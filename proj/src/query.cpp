#include "eel/query.hpp"

#include <algorithm>
#include <sstream>

namespace eel {

const char* pred_op_name(PredOp op) {
  switch (op) {
    case PredOp::Eq: return "=";
    case PredOp::Le: return "<=";
    case PredOp::Ge: return ">=";
    case PredOp::Between: return "between";
  }
  return "?";
}

PredOp pred_op_from_name(const std::string& name) {
  if (name == "=") return PredOp::Eq;
  if (name == "<=") return PredOp::Le;
  if (name == ">=") return PredOp::Ge;
  if (name == "between") return PredOp::Between;
  throw EngineError("unknown predicate operator: " + name);
}

bool same_predicate_set(const Query& a, const Query& b) {
  if (a.table != b.table || a.predicates.size() != b.predicates.size())
    return false;
  auto key = [](const Query& q) {
    auto ps = q.predicates;
    std::sort(ps.begin(), ps.end(), [](const Predicate& x, const Predicate& y) {
      return std::tie(x.column, x.op, x.v1, x.v2) <
             std::tie(y.column, y.op, y.v1, y.v2);
    });
    return ps;
  };
  return key(a) == key(b);
}

std::string query_to_string(const Query& q) {
  if (q.predicates.empty()) return "*";
  std::ostringstream os;
  for (std::size_t i = 0; i < q.predicates.size(); ++i) {
    const Predicate& p = q.predicates[i];
    if (i) os << " AND ";
    os << p.column << ' ' << pred_op_name(p.op) << ' ' << p.v1;
    if (p.op == PredOp::Between) os << ' ' << p.v2;
  }
  return os.str();
}

Query query_from_string(const std::string& table, const std::string& line) {
  Query q;
  q.table = table;
  std::string trimmed = line;
  // strip surrounding whitespace
  auto b = trimmed.find_first_not_of(" \t");
  auto e = trimmed.find_last_not_of(" \t");
  trimmed = (b == std::string::npos) ? "" : trimmed.substr(b, e - b + 1);
  if (trimmed.empty() || trimmed == "*") return q;

  std::istringstream is(trimmed);
  std::string tok;
  while (is) {
    Predicate p;
    if (!(is >> p.column)) break;
    std::string op;
    if (!(is >> op)) throw EngineError("truncated predicate in query: " + line);
    p.op = pred_op_from_name(op);
    if (!(is >> p.v1)) throw EngineError("missing value in query: " + line);
    if (p.op == PredOp::Between) {
      if (!(is >> p.v2)) throw EngineError("between needs two values: " + line);
      if (p.v1 > p.v2) throw EngineError("between bounds out of order: " + line);
    } else {
      p.v2 = p.v1;
    }
    q.predicates.push_back(std::move(p));
    if (is >> tok) {
      if (tok != "AND") throw EngineError("expected AND, got: " + tok);
    } else {
      break;
    }
  }
  return q;
}

}  // namespace eel
