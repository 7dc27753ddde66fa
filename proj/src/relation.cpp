#include "gqe/relation.hpp"

#include <algorithm>

namespace gqe {

int compare_tuples(const Tuple& a, const Tuple& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = compare_values(a[i], b[i]); c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

bool bag_equal(const Relation& a, const Relation& b) {
  if (a.schema != b.schema || a.rows.size() != b.rows.size()) return false;
  std::vector<Tuple> xs = a.rows;
  std::vector<Tuple> ys = b.rows;
  std::sort(xs.begin(), xs.end(), TupleLess{});
  std::sort(ys.begin(), ys.end(), TupleLess{});
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (compare_tuples(xs[i], ys[i]) != 0) return false;
  return true;
}

Relation project_columns(const Relation& r, const std::vector<std::string>& attrs) {
  std::vector<std::size_t> idx;
  for (const auto& a : attrs) {
    auto i = r.schema.index_of(a);
    if (!i) throw SchemaError("unknown attribute '" + a + "' in projection");
    idx.push_back(*i);
  }
  Relation out;
  out.schema = Schema(attrs);
  out.rows.reserve(r.rows.size());
  for (const auto& row : r.rows) {
    Tuple t;
    t.reserve(idx.size());
    for (std::size_t i : idx) t.push_back(row[i]);
    out.rows.push_back(std::move(t));
  }
  return out;
}

}  // namespace gqe
