#include "gqe/algebra.hpp"

#include <functional>
#include <sstream>

namespace gqe {

using namespace plan;

namespace {

std::string join_names(const std::vector<std::string>& names, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += sep;
    out += names[i];
  }
  return out;
}

Schema output_schema(const std::vector<OutputItem>& items) {
  std::vector<std::string> names;
  names.reserve(items.size());
  for (const auto& it : items) names.push_back(it.name);
  return Schema(std::move(names));
}

}  // namespace

Schema schema_of(const AlgebraNode& node) {
  return std::visit(
      [](const auto& n) -> Schema {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GetVertices>) {
          return Schema({n.var});
        } else if constexpr (std::is_same_v<T, UnitTable>) {
          return Schema();
        } else if constexpr (std::is_same_v<T, Expand>) {
          Schema in = schema_of(*n.input);
          if (!in.contains(n.src))
            throw SchemaError("expand source '" + n.src + "' not in input schema");
          return in.append(Schema({n.edge, n.dst}));
        } else if constexpr (std::is_same_v<T, Unwind>) {
          Schema in = schema_of(*n.input);
          if (const auto* v = std::get_if<expr::Var>(&n.source->node)) in = in.remove(v->name);
          return in.append(Schema({n.target}));
        } else if constexpr (std::is_same_v<T, Projection> || std::is_same_v<T, Grouping>) {
          schema_of(*n.input);
          return output_schema(n.items);
        } else if constexpr (std::is_same_v<T, Union> || std::is_same_v<T, BagUnion>) {
          Schema l = schema_of(*n.left);
          Schema r = schema_of(*n.right);
          if (l != r)
            throw SchemaError("union operands must have the same schema: <" +
                              join_names(l.names(), ", ") + "> vs <" +
                              join_names(r.names(), ", ") + ">");
          return l;
        } else if constexpr (std::is_same_v<T, Join> || std::is_same_v<T, LeftOuterJoin>) {
          Schema l = schema_of(*n.left);
          Schema r = schema_of(*n.right);
          return l.append(l.difference(r));
        } else {
          return schema_of(*n.input);  // selection, all-different, dedup, sort, top
        }
      },
      node.node);
}

namespace {

void check_expr(const Expr& e, const Schema& schema, bool allow_aggregate,
                std::vector<std::string>& diags) {
  if (!allow_aggregate && contains_aggregate(e)) {
    diags.push_back("aggregate call not allowed in " + to_text(e));
    return;
  }
  if (std::holds_alternative<expr::PatternPredicate>(e.node)) {
    diags.push_back("pattern predicate not allowed in an algebra expression");
    return;
  }
  std::vector<std::string> vars;
  collect_variables(e, vars);
  for (const auto& v : vars)
    if (!schema.contains(v))
      diags.push_back("unresolved variable '" + v + "' in " + to_text(e));
}

void validate_into(const AlgebraNode& node, std::vector<std::string>& diags) {
  try {
    schema_of(node);
  } catch (const SchemaError& e) {
    diags.push_back(e.what());
    return;
  }
  std::visit(
      [&diags](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expand>) {
          Schema in = schema_of(*n.input);
          if (in.contains(n.edge))
            diags.push_back("expand edge attribute '" + n.edge + "' already bound");
          if (in.contains(n.dst))
            diags.push_back("expand target attribute '" + n.dst + "' already bound");
          if (n.max_hops && n.min_hops > *n.max_hops)
            diags.push_back("expand range with min > max");
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          Schema in = schema_of(*n.input);
          for (const auto& v : n.edge_vars)
            if (!in.contains(v)) diags.push_back("all-different variable '" + v + "' not bound");
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, Unwind>) {
          check_expr(*n.source, schema_of(*n.input), false, diags);
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, Selection>) {
          check_expr(*n.predicate, schema_of(*n.input), false, diags);
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, Projection>) {
          Schema in = schema_of(*n.input);
          for (const auto& it : n.items) check_expr(*it.expr, in, false, diags);
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, Grouping>) {
          Schema in = schema_of(*n.input);
          for (const auto& c : n.criteria) check_expr(*c, in, false, diags);
          for (const auto& it : n.items) {
            if (is_aggregate_call(*it.expr)) {
              const auto& call = std::get<expr::AggCall>(it.expr->node);
              if (call.arg) check_expr(*call.arg, in, false, diags);
            } else {
              check_expr(*it.expr, in, false, diags);
              bool in_criteria = false;
              for (const auto& c : n.criteria)
                if (expr_equal(c, it.expr)) in_criteria = true;
              if (!in_criteria)
                diags.push_back("grouping item '" + to_text(*it.expr) +
                                "' is neither an aggregate nor a grouping criterion");
            }
          }
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, Sort>) {
          Schema in = schema_of(*n.input);
          for (const auto& k : n.keys) check_expr(*k.key, in, false, diags);
          validate_into(*n.input, diags);
        } else if constexpr (std::is_same_v<T, LeftOuterJoin>) {
          if (n.condition) {
            Schema combined = schema_of(*n.left).append(schema_of(*n.left).difference(schema_of(*n.right)));
            check_expr(*n.condition, combined, false, diags);
          }
          validate_into(*n.left, diags);
          validate_into(*n.right, diags);
        } else if constexpr (std::is_same_v<T, Union> || std::is_same_v<T, BagUnion> ||
                             std::is_same_v<T, Join>) {
          validate_into(*n.left, diags);
          validate_into(*n.right, diags);
        } else if constexpr (std::is_same_v<T, DuplicateElimination> || std::is_same_v<T, Top>) {
          validate_into(*n.input, diags);
        } else {
          // GetVertices / UnitTable: nothing beyond schema_of
        }
      },
      node.node);
}

std::string range_text(std::size_t min, const std::optional<std::size_t>& max) {
  return std::to_string(min) + ".." + (max ? std::to_string(*max) : "*");
}

std::string item_text(const OutputItem& it) {
  std::string t = to_text(*it.expr);
  if (t != it.name) t += " AS " + it.name;
  return t;
}

void render_into(const AlgebraNode& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GetVertices>) {
          out += "GetVertices(" + n.var;
          if (!n.labels.empty()) out += ": " + join_names(n.labels, ":");
          out += ")\n";
        } else if constexpr (std::is_same_v<T, UnitTable>) {
          out += "UnitTable\n";
        } else if constexpr (std::is_same_v<T, Expand>) {
          out += n.dir == Direction::Out  ? "ExpandOut("
                 : n.dir == Direction::In ? "ExpandIn("
                                          : "ExpandBoth(";
          out += n.src + " -> " + n.dst;
          if (!n.dst_labels.empty()) out += ": " + join_names(n.dst_labels, ":");
          out += ", " + n.edge;
          if (!n.types.empty()) out += ": " + join_names(n.types, "|");
          out += ", " + range_text(n.min_hops, n.max_hops) + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          out += "AllDifferent(" + join_names(n.edge_vars, ", ") + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Unwind>) {
          out += "Unwind(" + to_text(*n.source) + " -> " + n.target + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Selection>) {
          out += "Selection(" + to_text(*n.predicate) + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Projection>) {
          std::vector<std::string> parts;
          for (const auto& it : n.items) parts.push_back(item_text(it));
          out += "Projection(" + join_names(parts, ", ") + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Grouping>) {
          std::vector<std::string> crit;
          for (const auto& c : n.criteria) crit.push_back(to_text(*c));
          std::vector<std::string> parts;
          for (const auto& it : n.items) parts.push_back(item_text(it));
          out += "Grouping([" + join_names(crit, ", ") + "], " + join_names(parts, ", ") + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, DuplicateElimination>) {
          out += "DuplicateElimination\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Sort>) {
          std::vector<std::string> parts;
          for (const auto& k : n.keys)
            parts.push_back(to_text(*k.key) + (k.ascending ? " ASC" : " DESC"));
          out += "Sort(" + join_names(parts, ", ") + ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Top>) {
          out += "Top(skip=" + std::to_string(n.skip);
          if (n.limit) out += ", limit=" + std::to_string(*n.limit);
          out += ")\n";
          render_into(*n.input, depth + 1, out);
        } else if constexpr (std::is_same_v<T, Union> || std::is_same_v<T, BagUnion> ||
                             std::is_same_v<T, Join>) {
          out += std::is_same_v<T, Union>      ? "Union\n"
                 : std::is_same_v<T, BagUnion> ? "BagUnion\n"
                                               : "Join\n";
          render_into(*n.left, depth + 1, out);
          render_into(*n.right, depth + 1, out);
        } else if constexpr (std::is_same_v<T, LeftOuterJoin>) {
          out += "LeftOuterJoin";
          if (n.condition) out += "(" + to_text(*n.condition) + ")";
          out += "\n";
          render_into(*n.left, depth + 1, out);
          render_into(*n.right, depth + 1, out);
        }
      },
      node.node);
}

}  // namespace

std::vector<std::string> validate(const AlgebraNode& node) {
  std::vector<std::string> diags;
  validate_into(node, diags);
  return diags;
}

std::string render(const AlgebraNode& node) {
  std::string out;
  render_into(node, 0, out);
  return out;
}

bool plan_equal(const PlanPtr& a, const PlanPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->node.index() != b->node.index()) return false;
  const AlgebraNode& x = *a;
  const AlgebraNode& y = *b;
  return std::visit(
      [&y](const auto& l) -> bool {
        using T = std::decay_t<decltype(l)>;
        const auto& r = std::get<T>(y.node);
        if constexpr (std::is_same_v<T, GetVertices>) {
          return l.var == r.var && l.labels == r.labels;
        } else if constexpr (std::is_same_v<T, UnitTable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Expand>) {
          return l.dir == r.dir && l.src == r.src && l.dst == r.dst &&
                 l.dst_labels == r.dst_labels && l.edge == r.edge && l.types == r.types &&
                 l.min_hops == r.min_hops && l.max_hops == r.max_hops &&
                 plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, AllDifferent>) {
          return l.edge_vars == r.edge_vars && plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Unwind>) {
          return expr_equal(l.source, r.source) && l.target == r.target &&
                 plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Selection>) {
          return expr_equal(l.predicate, r.predicate) && plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Projection>) {
          if (l.items.size() != r.items.size()) return false;
          for (std::size_t i = 0; i < l.items.size(); ++i)
            if (l.items[i].name != r.items[i].name ||
                !expr_equal(l.items[i].expr, r.items[i].expr))
              return false;
          return plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Grouping>) {
          if (l.criteria.size() != r.criteria.size() || l.items.size() != r.items.size())
            return false;
          for (std::size_t i = 0; i < l.criteria.size(); ++i)
            if (!expr_equal(l.criteria[i], r.criteria[i])) return false;
          for (std::size_t i = 0; i < l.items.size(); ++i)
            if (l.items[i].name != r.items[i].name ||
                !expr_equal(l.items[i].expr, r.items[i].expr))
              return false;
          return plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, DuplicateElimination>) {
          return plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Sort>) {
          if (l.keys.size() != r.keys.size()) return false;
          for (std::size_t i = 0; i < l.keys.size(); ++i)
            if (l.keys[i].ascending != r.keys[i].ascending ||
                !expr_equal(l.keys[i].key, r.keys[i].key))
              return false;
          return plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, Top>) {
          return l.skip == r.skip && l.limit == r.limit && plan_equal(l.input, r.input);
        } else if constexpr (std::is_same_v<T, LeftOuterJoin>) {
          return expr_equal(l.condition, r.condition) && plan_equal(l.left, r.left) &&
                 plan_equal(l.right, r.right);
        } else {
          return plan_equal(l.left, r.left) && plan_equal(l.right, r.right);
        }
      },
      x.node);
}

}  // namespace gqe
