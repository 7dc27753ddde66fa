#include "gqe/value.hpp"

#include <charconv>
#include <cmath>

namespace gqe {

namespace {

// Kind ranks for the cross-kind total order. Null ranks greatest.
int kind_rank(const Value& v) {
  if (v.is_bool()) return 0;
  if (v.is_numeric()) return 1;
  if (v.is_text()) return 2;
  if (v.is_list()) return 3;
  if (v.is_vertex()) return 4;
  if (v.is_edge()) return 5;
  return 6;  // null
}

int cmp3(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

template <typename T>
int cmp3t(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

int compare_values(const Value& a, const Value& b) {
  int ra = kind_rank(a), rb = kind_rank(b);
  if (ra != rb) return cmp3(ra, rb);
  switch (ra) {
    case 0:
      return cmp3t(a.as_bool(), b.as_bool());
    case 1:
      if (a.is_int() && b.is_int()) return cmp3t(a.as_int(), b.as_int());
      return cmp3t(a.as_number(), b.as_number());
    case 2:
      return a.as_text().compare(b.as_text()) < 0 ? -1 : (a.as_text() == b.as_text() ? 0 : 1);
    case 3: {
      const auto& xs = a.as_list();
      const auto& ys = b.as_list();
      for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (int c = compare_values(xs[i], ys[i]); c != 0) return c;
      }
      return cmp3t(xs.size(), ys.size());
    }
    case 4:
      return cmp3t(a.as_vertex().id, b.as_vertex().id);
    case 5:
      return cmp3t(a.as_edge().id, b.as_edge().id);
    default:
      return 0;  // both null
  }
}

Value value_equals(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return Value::null();
  int ra = kind_rank(a), rb = kind_rank(b);
  if (ra != rb) return Value(false);
  return Value(compare_values(a, b) == 0);
}

Value value_less(const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return Value::null();
  return Value(compare_values(a, b) < 0);
}

std::string float_text(double d) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  std::string s(buf, p);
  // keep floats visually distinct from integers
  if (s.find_first_of(".eEin") == std::string::npos) s += ".0";
  return s;
}

std::string value_literal_text(const Value& v) {
  if (v.is_null()) return "null";
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_float()) return float_text(v.as_float());
  if (v.is_text()) {
    std::string out = "'";
    for (char c : v.as_text()) {
      if (c == '\'' || c == '\\') out += '\\';
      out += c;
    }
    out += '\'';
    return out;
  }
  if (v.is_list()) {
    std::string out = "[";
    bool first = true;
    for (const auto& x : v.as_list()) {
      if (!first) out += ", ";
      first = false;
      out += value_literal_text(x);
    }
    return out + "]";
  }
  if (v.is_vertex()) return "(:" + v.as_vertex().id + ")";
  return "[:" + v.as_edge().id + "]";
}

}  // namespace gqe
