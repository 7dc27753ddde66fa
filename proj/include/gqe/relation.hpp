#pragma once

#include <string>
#include <vector>

#include "gqe/schema.hpp"
#include "gqe/value.hpp"

namespace gqe {

using Tuple = std::vector<Value>;

/// A bag of tuples over a named-attribute schema. `ordered` is set only
/// downstream of Sort/Top; otherwise row order carries no meaning and
/// comparisons should be bag comparisons.
struct Relation {
  Schema schema;
  std::vector<Tuple> rows;
  bool ordered = false;
};

/// Lexicographic tuple order over compare_values (NULLs equal).
int compare_tuples(const Tuple& a, const Tuple& b);

struct TupleLess {
  bool operator()(const Tuple& a, const Tuple& b) const { return compare_tuples(a, b) < 0; }
};

/// Multiset equality of rows; schemas must match exactly (names, order).
bool bag_equal(const Relation& a, const Relation& b);

/// Rows reordered to the given attribute list (a permutation of the
/// schema); used to compare relations up to column order.
Relation project_columns(const Relation& r, const std::vector<std::string>& attrs);

}  // namespace gqe
