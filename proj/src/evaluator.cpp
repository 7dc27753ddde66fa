#include "gqe/evaluator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gqe {

namespace {

using namespace plan;

Value eval_arith(ArithOp op, const Value& l, const Value& r) {
  if (l.is_null() || r.is_null()) return Value::null();
  if (!l.is_numeric() || !r.is_numeric())
    throw EvalError("arithmetic on non-numeric values");
  if (l.is_int() && r.is_int()) {
    std::int64_t a = l.as_int(), b = r.as_int();
    switch (op) {
      case ArithOp::Add: return Value(a + b);
      case ArithOp::Sub: return Value(a - b);
      case ArithOp::Mul: return Value(a * b);
      default:
        if (b == 0) return Value::null();
        return Value(a / b);
    }
  }
  double a = l.as_number(), b = r.as_number();
  switch (op) {
    case ArithOp::Add: return Value(a + b);
    case ArithOp::Sub: return Value(a - b);
    case ArithOp::Mul: return Value(a * b);
    default:
      if (b == 0.0) return Value::null();
      return Value(a / b);
  }
}

Value kleene_not(const Value& v) {
  if (v.is_null()) return Value::null();
  if (!v.is_bool()) throw EvalError("NOT over a non-boolean value");
  return Value(!v.as_bool());
}

bool expect_bool(const Value& v, const char* ctx, bool& is_null) {
  if (v.is_null()) {
    is_null = true;
    return false;
  }
  if (!v.is_bool()) throw EvalError(std::string(ctx) + " over a non-boolean value");
  return v.as_bool();
}

}  // namespace

Value eval_expr(const Expr& e, const Schema& schema, const Tuple& row, const PropertyGraph& g) {
  using namespace expr;
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Var>) {
          auto i = schema.index_of(n.name);
          if (!i) throw EvalError("unresolved variable '" + n.name + "'");
          return row[*i];
        } else if constexpr (std::is_same_v<T, PropAccess>) {
          auto i = schema.index_of(n.var);
          if (!i) throw EvalError("unresolved variable '" + n.var + "'");
          const Value& element = row[*i];
          if (element.is_null()) return Value::null();
          return get_property(g, element, n.prop);
        } else if constexpr (std::is_same_v<T, Arith>) {
          return eval_arith(n.op, eval_expr(*n.lhs, schema, row, g),
                            eval_expr(*n.rhs, schema, row, g));
        } else if constexpr (std::is_same_v<T, Neg>) {
          Value v = eval_expr(*n.operand, schema, row, g);
          if (v.is_null()) return Value::null();
          if (v.is_int()) return Value(-v.as_int());
          if (v.is_float()) return Value(-v.as_float());
          throw EvalError("unary minus over a non-numeric value");
        } else if constexpr (std::is_same_v<T, Cmp>) {
          Value l = eval_expr(*n.lhs, schema, row, g);
          Value r = eval_expr(*n.rhs, schema, row, g);
          switch (n.op) {
            case CmpOp::Eq: return value_equals(l, r);
            case CmpOp::Ne: return kleene_not(value_equals(l, r));
            case CmpOp::Lt: return value_less(l, r);
            case CmpOp::Gt: return value_less(r, l);
            case CmpOp::Le: return kleene_not(value_less(r, l));
            default: return kleene_not(value_less(l, r));
          }
        } else if constexpr (std::is_same_v<T, And>) {
          bool lnull = false, rnull = false;
          bool l = expect_bool(eval_expr(*n.lhs, schema, row, g), "AND", lnull);
          if (!lnull && !l) return Value(false);
          bool r = expect_bool(eval_expr(*n.rhs, schema, row, g), "AND", rnull);
          if (!rnull && !r) return Value(false);
          if (lnull || rnull) return Value::null();
          return Value(true);
        } else if constexpr (std::is_same_v<T, Or>) {
          bool lnull = false, rnull = false;
          bool l = expect_bool(eval_expr(*n.lhs, schema, row, g), "OR", lnull);
          if (!lnull && l) return Value(true);
          bool r = expect_bool(eval_expr(*n.rhs, schema, row, g), "OR", rnull);
          if (!rnull && r) return Value(true);
          if (lnull || rnull) return Value::null();
          return Value(false);
        } else if constexpr (std::is_same_v<T, Not>) {
          return kleene_not(eval_expr(*n.operand, schema, row, g));
        } else if constexpr (std::is_same_v<T, HasLabels>) {
          auto i = schema.index_of(n.var);
          if (!i) throw EvalError("unresolved variable '" + n.var + "'");
          const Value& v = row[*i];
          if (v.is_null()) return Value::null();
          if (!v.is_vertex()) throw EvalError("label test over a non-vertex value");
          const auto& have = g.labels(v.as_vertex().id);
          for (const auto& l : n.labels)
            if (!have.count(l)) return Value(false);
          return Value(true);
        } else if constexpr (std::is_same_v<T, IsNull>) {
          return Value(eval_expr(*n.operand, schema, row, g).is_null());
        } else if constexpr (std::is_same_v<T, AggCall>) {
          throw EvalError("aggregate call outside grouping");
        } else {
          throw EvalError("pattern predicate reached the evaluator");
        }
      },
      e.node);
}

namespace {

bool has_all_labels(const PropertyGraph& g, const std::string& vertex,
                    const std::vector<std::string>& labels) {
  const auto& have = g.labels(vertex);
  for (const auto& l : labels)
    if (!have.count(l)) return false;
  return true;
}

Relation eval_get_vertices(const GetVertices& n, const PropertyGraph& g) {
  Relation out;
  out.schema = Schema({n.var});
  for (const auto& id : g.vertex_ids())
    if (has_all_labels(g, id, n.labels)) out.rows.push_back({Value(VertexRef{id})});
  return out;
}

Relation eval_expand(const Expand& n, Relation input, const PropertyGraph& g) {
  Relation out;
  out.schema = input.schema.append(Schema({n.edge, n.dst}));
  std::size_t src_idx = *input.schema.index_of(n.src);
  bool scalar = n.max_hops && *n.max_hops == 1;

  for (const auto& row : input.rows) {
    const Value& from = row[src_idx];
    if (from.is_null()) continue;
    if (!from.is_vertex()) throw EvalError("expand over a non-vertex value");

    // depth-first trail enumeration; edges are distinct within one trail,
    // which keeps unbounded ranges finite
    std::vector<std::string> trail;
    std::set<std::string> used;
    auto emit = [&](const std::string& at) {
      Tuple t = row;
      if (scalar)
        t.push_back(trail.empty() ? Value::null() : Value(EdgeRef{trail.front()}));
      else {
        Value::List edges;
        for (const auto& e : trail) edges.push_back(Value(EdgeRef{e}));
        t.push_back(Value(std::move(edges)));
      }
      t.push_back(Value(VertexRef{at}));
      out.rows.push_back(std::move(t));
    };
    auto walk = [&](auto&& self, const std::string& at) -> void {
      if (trail.size() >= n.min_hops && has_all_labels(g, at, n.dst_labels)) emit(at);
      if (n.max_hops && trail.size() >= *n.max_hops) return;
      for (const auto& [eid, next] : g.adjacency(at, n.dir, n.types)) {
        if (used.count(eid)) continue;
        used.insert(eid);
        trail.push_back(eid);
        self(self, next);
        trail.pop_back();
        used.erase(eid);
      }
    };
    walk(walk, from.as_vertex().id);
  }
  return out;
}

Relation eval_all_different(const AllDifferent& n, Relation input) {
  std::vector<std::size_t> idx;
  for (const auto& v : n.edge_vars) idx.push_back(*input.schema.index_of(v));
  Relation out;
  out.schema = input.schema;
  for (auto& row : input.rows) {
    std::vector<std::string> ids;
    for (std::size_t i : idx) {
      const Value& v = row[i];
      if (v.is_null()) continue;
      if (v.is_edge()) {
        ids.push_back(v.as_edge().id);
      } else if (v.is_list()) {
        for (const auto& e : v.as_list()) {
          if (!e.is_edge()) throw EvalError("all-different over a non-edge list element");
          ids.push_back(e.as_edge().id);
        }
      } else {
        throw EvalError("all-different over a non-edge value");
      }
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) == ids.end()) out.rows.push_back(std::move(row));
  }
  return out;
}

Relation eval_unwind(const Unwind& n, Relation input, const PropertyGraph& g) {
  std::optional<std::size_t> drop;
  if (const auto* v = std::get_if<expr::Var>(&n.source->node)) drop = input.schema.index_of(v->name);
  Schema out_schema = input.schema;
  if (const auto* v = std::get_if<expr::Var>(&n.source->node)) out_schema = out_schema.remove(v->name);
  out_schema = out_schema.append(Schema({n.target}));

  Relation out;
  out.schema = std::move(out_schema);
  for (const auto& row : input.rows) {
    Value xs = eval_expr(*n.source, input.schema, row, g);
    if (xs.is_null()) continue;  // NULL unwinds to no rows, like the empty list
    if (!xs.is_list()) throw EvalError("UNWIND over a non-list value");
    for (const auto& x : xs.as_list()) {
      Tuple t;
      t.reserve(out.schema.size());
      for (std::size_t i = 0; i < row.size(); ++i)
        if (!drop || *drop != i) t.push_back(row[i]);
      t.push_back(x);
      out.rows.push_back(std::move(t));
    }
  }
  return out;
}

Relation eval_grouping(const Grouping& n, Relation input, const PropertyGraph& g) {
  std::vector<std::string> names;
  for (const auto& it : n.items) names.push_back(it.name);

  std::map<Tuple, std::size_t, TupleLess> group_index;  // NULL keys group together
  std::vector<std::vector<const Tuple*>> groups;
  for (const auto& row : input.rows) {
    Tuple key;
    for (const auto& c : n.criteria) key.push_back(eval_expr(*c, input.schema, row, g));
    auto [it, inserted] = group_index.try_emplace(std::move(key), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(&row);
  }
  // aggregates over nothing still produce one tuple when there is no key
  bool whole_relation_group = n.criteria.empty() && input.rows.empty();

  auto aggregate = [&](const expr::AggCall& call, const std::vector<const Tuple*>& rows) -> Value {
    if (!call.arg) return Value(static_cast<std::int64_t>(rows.size()));  // count(*)
    std::vector<Value> values;
    for (const Tuple* row : rows) {
      Value v = eval_expr(*call.arg, input.schema, *row, g);
      if (!v.is_null()) values.push_back(std::move(v));
    }
    switch (call.fn) {
      case AggFn::Count:
        return Value(static_cast<std::int64_t>(values.size()));
      case AggFn::CountDistinct: {
        std::set<Value, decltype([](const Value& a, const Value& b) {
                  return compare_values(a, b) < 0;
                })>
            distinct(values.begin(), values.end());
        return Value(static_cast<std::int64_t>(distinct.size()));
      }
      case AggFn::Sum:
      case AggFn::Avg: {
        std::int64_t isum = 0;
        double fsum = 0;
        bool any_float = false;
        for (const auto& v : values) {
          if (v.is_int()) isum += v.as_int();
          else if (v.is_float()) { fsum += v.as_float(); any_float = true; }
          else throw EvalError("sum/avg over a non-numeric value");
        }
        if (call.fn == AggFn::Sum)
          return any_float ? Value(fsum + static_cast<double>(isum)) : Value(isum);
        if (values.empty()) return Value::null();
        return Value((fsum + static_cast<double>(isum)) / static_cast<double>(values.size()));
      }
      case AggFn::Min:
      case AggFn::Max: {
        if (values.empty()) return Value::null();
        const Value* best = &values[0];
        for (const auto& v : values) {
          int c = compare_values(v, *best);
          if (call.fn == AggFn::Min ? c < 0 : c > 0) best = &v;
        }
        return *best;
      }
      default:  // collect
        return Value(Value::List(values.begin(), values.end()));
    }
  };

  Relation out;
  out.schema = Schema(std::move(names));
  auto emit_group = [&](const std::vector<const Tuple*>& rows) {
    Tuple t;
    for (const auto& item : n.items) {
      if (is_aggregate_call(*item.expr))
        t.push_back(aggregate(std::get<expr::AggCall>(item.expr->node), rows));
      else
        t.push_back(eval_expr(*item.expr, input.schema, *rows.front(), g));
    }
    out.rows.push_back(std::move(t));
  };
  for (const auto& rows : groups) emit_group(rows);
  if (whole_relation_group) emit_group({});
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> shared_attributes(const Schema& l,
                                                                   const Schema& r) {
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (auto j = l.index_of(r.at(i))) shared.push_back({*j, i});
  return shared;
}

bool rows_match(const Tuple& lrow, const Tuple& rrow,
                const std::vector<std::pair<std::size_t, std::size_t>>& shared) {
  for (const auto& [li, ri] : shared) {
    const Value& a = lrow[li];
    const Value& b = rrow[ri];
    // join keys use strict equality: NULL never matches NULL
    if (a.is_null() || b.is_null() || compare_values(a, b) != 0) return false;
  }
  return true;
}

Tuple combine_rows(const Tuple& lrow, const Tuple& rrow, const std::vector<std::size_t>& r_extra) {
  Tuple t = lrow;
  for (std::size_t i : r_extra) t.push_back(rrow[i]);
  return t;
}

Relation eval_join(Relation l, Relation r) {
  Relation out;
  out.schema = l.schema.append(l.schema.difference(r.schema));
  auto shared = shared_attributes(l.schema, r.schema);
  std::vector<std::size_t> r_extra;
  for (std::size_t i = 0; i < r.schema.size(); ++i)
    if (!l.schema.contains(r.schema.at(i))) r_extra.push_back(i);
  for (const auto& lrow : l.rows)
    for (const auto& rrow : r.rows)
      if (rows_match(lrow, rrow, shared)) out.rows.push_back(combine_rows(lrow, rrow, r_extra));
  return out;
}

Relation eval_left_outer_join(const LeftOuterJoin& n, Relation l, Relation r,
                              const PropertyGraph& g) {
  Relation out;
  out.schema = l.schema.append(l.schema.difference(r.schema));
  auto shared = shared_attributes(l.schema, r.schema);
  std::vector<std::size_t> r_extra;
  for (std::size_t i = 0; i < r.schema.size(); ++i)
    if (!l.schema.contains(r.schema.at(i))) r_extra.push_back(i);
  for (const auto& lrow : l.rows) {
    bool matched = false;
    for (const auto& rrow : r.rows) {
      if (!rows_match(lrow, rrow, shared)) continue;
      Tuple t = combine_rows(lrow, rrow, r_extra);
      if (n.condition) {
        Value ok = eval_expr(*n.condition, out.schema, t, g);
        if (!(ok.is_bool() && ok.as_bool())) continue;
      }
      matched = true;
      out.rows.push_back(std::move(t));
    }
    if (!matched) {
      Tuple t = lrow;
      t.resize(out.schema.size());  // pad with NULL
      out.rows.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<Tuple> dedup_rows(const std::vector<Tuple>& rows) {
  std::set<Tuple, TupleLess> seen;
  std::vector<Tuple> out;
  for (const auto& row : rows)
    if (seen.insert(row).second) out.push_back(row);
  return out;
}

Relation eval_sort(const Sort& n, Relation input, const PropertyGraph& g) {
  std::vector<std::pair<Tuple, std::size_t>> keyed;
  keyed.reserve(input.rows.size());
  for (std::size_t i = 0; i < input.rows.size(); ++i) {
    Tuple key;
    for (const auto& k : n.keys) key.push_back(eval_expr(*k.key, input.schema, input.rows[i], g));
    keyed.push_back({std::move(key), i});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&n](const auto& a, const auto& b) {
    for (std::size_t i = 0; i < n.keys.size(); ++i) {
      int c = compare_values(a.first[i], b.first[i]);  // NULL compares greatest
      if (c != 0) return n.keys[i].ascending ? c < 0 : c > 0;
    }
    return false;
  });
  Relation out;
  out.schema = input.schema;
  out.ordered = true;
  out.rows.reserve(input.rows.size());
  for (const auto& [key, i] : keyed) out.rows.push_back(std::move(input.rows[i]));
  return out;
}

}  // namespace

Relation evaluate(const AlgebraNode& node, const PropertyGraph& g) {
  return std::visit(
      [&g](const auto& n) -> Relation {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GetVertices>) {
          return eval_get_vertices(n, g);
        } else if constexpr (std::is_same_v<T, UnitTable>) {
          return Relation{Schema(), {Tuple{}}, false};
        } else if constexpr (std::is_same_v<T, Expand>) {
          return eval_expand(n, evaluate(*n.input, g), g);
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          return eval_all_different(n, evaluate(*n.input, g));
        } else if constexpr (std::is_same_v<T, Unwind>) {
          return eval_unwind(n, evaluate(*n.input, g), g);
        } else if constexpr (std::is_same_v<T, Selection>) {
          Relation input = evaluate(*n.input, g);
          Relation out;
          out.schema = input.schema;
          for (auto& row : input.rows) {
            Value ok = eval_expr(*n.predicate, input.schema, row, g);
            if (ok.is_bool() && ok.as_bool()) out.rows.push_back(std::move(row));
          }
          return out;
        } else if constexpr (std::is_same_v<T, Projection>) {
          Relation input = evaluate(*n.input, g);
          Relation out;
          std::vector<std::string> names;
          for (const auto& it : n.items) names.push_back(it.name);
          out.schema = Schema(std::move(names));
          for (const auto& row : input.rows) {
            Tuple t;
            for (const auto& it : n.items)
              t.push_back(eval_expr(*it.expr, input.schema, row, g));
            out.rows.push_back(std::move(t));
          }
          return out;
        } else if constexpr (std::is_same_v<T, Grouping>) {
          return eval_grouping(n, evaluate(*n.input, g), g);
        } else if constexpr (std::is_same_v<T, DuplicateElimination>) {
          Relation input = evaluate(*n.input, g);
          return Relation{input.schema, dedup_rows(input.rows), false};
        } else if constexpr (std::is_same_v<T, Sort>) {
          return eval_sort(n, evaluate(*n.input, g), g);
        } else if constexpr (std::is_same_v<T, Top>) {
          Relation input = evaluate(*n.input, g);
          Relation out;
          out.schema = input.schema;
          out.ordered = input.ordered;
          for (std::size_t i = n.skip; i < input.rows.size(); ++i) {
            if (n.limit && out.rows.size() >= *n.limit) break;
            out.rows.push_back(std::move(input.rows[i]));
          }
          return out;
        } else if constexpr (std::is_same_v<T, Union>) {
          Relation l = evaluate(*n.left, g);
          Relation r = evaluate(*n.right, g);
          if (l.schema != r.schema) throw EvalError("union operands with differing schemas");
          std::vector<Tuple> all = std::move(l.rows);
          all.insert(all.end(), r.rows.begin(), r.rows.end());
          return Relation{l.schema, dedup_rows(all), false};
        } else if constexpr (std::is_same_v<T, BagUnion>) {
          Relation l = evaluate(*n.left, g);
          Relation r = evaluate(*n.right, g);
          if (l.schema != r.schema) throw EvalError("bag union operands with differing schemas");
          for (auto& row : r.rows) l.rows.push_back(std::move(row));
          l.ordered = false;
          return l;
        } else if constexpr (std::is_same_v<T, Join>) {
          return eval_join(evaluate(*n.left, g), evaluate(*n.right, g));
        } else {
          return eval_left_outer_join(n, evaluate(*n.left, g), evaluate(*n.right, g), g);
        }
      },
      node.node);
}

}  // namespace gqe
