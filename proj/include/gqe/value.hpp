#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gqe {

/// Traversal / pattern direction.
enum class Direction { Out, In, Both };

struct VertexRef {
  std::string id;
  friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

struct EdgeRef {
  std::string id;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

/// A query value: NULL, an atomic value, a heterogeneous list, or a
/// reference to a graph element.
struct Value {
  using List = std::vector<Value>;
  using Storage = std::variant<std::monostate, bool, std::int64_t, double, std::string,
                               List, VertexRef, EdgeRef>;

  Storage data;

  Value() : data(std::monostate{}) {}
  Value(bool b) : data(b) {}
  Value(int i) : data(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : data(i) {}
  Value(double d) : data(d) {}
  Value(const char* s) : data(std::string(s)) {}
  Value(std::string s) : data(std::move(s)) {}
  Value(List xs) : data(std::move(xs)) {}
  Value(VertexRef v) : data(std::move(v)) {}
  Value(EdgeRef e) : data(std::move(e)) {}

  static Value null() { return Value(); }

  bool is_null() const { return std::holds_alternative<std::monostate>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_float() const { return std::holds_alternative<double>(data); }
  bool is_numeric() const { return is_int() || is_float(); }
  bool is_text() const { return std::holds_alternative<std::string>(data); }
  bool is_list() const { return std::holds_alternative<List>(data); }
  bool is_vertex() const { return std::holds_alternative<VertexRef>(data); }
  bool is_edge() const { return std::holds_alternative<EdgeRef>(data); }

  bool as_bool() const { return std::get<bool>(data); }
  std::int64_t as_int() const { return std::get<std::int64_t>(data); }
  double as_float() const { return std::get<double>(data); }
  double as_number() const { return is_int() ? static_cast<double>(as_int()) : as_float(); }
  const std::string& as_text() const { return std::get<std::string>(data); }
  const List& as_list() const { return std::get<List>(data); }
  const VertexRef& as_vertex() const { return std::get<VertexRef>(data); }
  const EdgeRef& as_edge() const { return std::get<EdgeRef>(data); }

  friend bool operator==(const Value&, const Value&) = default;
};

/// Total order over values used by sorting, min/max, grouping keys and
/// deduplication. NULL compares greatest (so it sorts last ascending) and
/// equal to NULL. Across kinds the order is
/// Bool < Int/Float < Text < List < VertexRef < EdgeRef;
/// mixed Int/Float pairs compare numerically.
int compare_values(const Value& a, const Value& b);

/// Equality under grouping/dedup/union semantics (NULL == NULL).
inline bool same_value(const Value& a, const Value& b) { return compare_values(a, b) == 0; }

/// Three-valued `=`: NULL operand yields NULL; values of different kinds
/// (other than Int/Float pairs) compare unequal rather than erroring.
Value value_equals(const Value& a, const Value& b);

/// Three-valued ordering comparison over the same total order as
/// compare_values; NULL operand yields NULL.
Value value_less(const Value& a, const Value& b);

/// Literal rendering used by the expression printer: 'text' quoting,
/// shortest round-trip floats, [a, b] lists, (:v) / [:e] element refs.
std::string value_literal_text(const Value& v);

/// Shortest round-trip float rendering, always carrying a '.' or exponent.
std::string float_text(double d);

}  // namespace gqe
