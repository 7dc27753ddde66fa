#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gqe/expr.hpp"
#include "gqe/pattern.hpp"

namespace gqe {

/// `MATCH` / `OPTIONAL MATCH` with comma patterns and an optional WHERE.
struct MatchClause {
  bool optional = false;
  std::vector<PatternPart> patterns;
  ExprPtr where;  // may be null
};

/// One entry of a RETURN/WITH list: `expr` or `expr AS name`.
struct ReturnItem {
  ExprPtr expr;
  std::optional<std::string> alias;
};

/// Output column name: the alias, or the expression's canonical text.
inline std::string item_name(const ReturnItem& item) {
  return item.alias ? *item.alias : to_text(*item.expr);
}

struct UnwindItem {
  ExprPtr source;
  std::string alias;
};

struct OrderKey {
  ExprPtr expr;
  bool ascending = true;
};

struct WithTail {
  std::vector<ReturnItem> items;
  bool distinct = false;
  ExprPtr where;  // may be null
  std::optional<UnwindItem> unwind;
};

struct UnwindOnlyTail {
  UnwindItem unwind;
};

struct ReturnTail {
  std::vector<ReturnItem> items;
  bool distinct = false;
  std::vector<OrderKey> order_by;
  std::optional<std::size_t> skip;
  std::optional<std::size_t> limit;
};

/// MATCH* followed by (WITH UNWIND?) | UNWIND | RETURN.
struct QueryPart {
  std::vector<MatchClause> matches;
  std::variant<WithTail, UnwindOnlyTail, ReturnTail> tail;
};

/// Chain of query parts; only the last one carries a ReturnTail.
struct SingleQuery {
  std::vector<QueryPart> parts;
};

/// UNION / UNION ALL combination of single queries.
/// union_all.size() == singles.size() - 1.
struct QueryAst {
  std::vector<SingleQuery> singles;
  std::vector<bool> union_all;
};

}  // namespace gqe
