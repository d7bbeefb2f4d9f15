#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eel/common.hpp"

namespace eel {

enum class PredOp { Eq, Le, Ge, Between };

const char* pred_op_name(PredOp op);
PredOp pred_op_from_name(const std::string& name);

/// One conjunct of a single-table predicate set. v2 is meaningful only for
/// Between.
struct Predicate {
  std::string column;
  PredOp op = PredOp::Eq;
  i64 v1 = 0;
  i64 v2 = 0;

  bool operator==(const Predicate&) const = default;
};

/// Single-table conjunctive query: the unit task for cardinality estimation.
struct Query {
  std::string table;
  std::vector<Predicate> predicates;

  bool operator==(const Query&) const = default;
};

// True when both queries carry the same predicate set regardless of
// predicate order.
bool same_predicate_set(const Query& a, const Query& b);

// Wire format: `col op v1 [v2]` conjuncts joined by ` AND `. An empty
// predicate list serializes to `*`.
std::string query_to_string(const Query& q);
Query query_from_string(const std::string& table, const std::string& line);

}  // namespace eel
