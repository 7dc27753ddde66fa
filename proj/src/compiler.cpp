#include "gqe/compiler.hpp"

#include <map>
#include <set>
#include <string>

namespace gqe {

namespace {

using namespace plan;

enum class VarKind { Vertex, Edge, Other };

std::string schema_text(const Schema& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += s.at(i);
  }
  return out + ">";
}

/// Names for anonymous pattern elements: _v1, _v2, ... and _e1, _e2, ...
/// numbered per kind in encounter order across the whole query. Skips
/// names the query already declares.
class FreshNamer {
 public:
  explicit FreshNamer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  std::string vertex() { return next("_v", vertex_counter_); }
  std::string edge() { return next("_e", edge_counter_); }

 private:
  std::string next(const char* prefix, int& counter) {
    for (;;) {
      std::string candidate = prefix + std::to_string(counter++);
      if (taken_.insert(candidate).second) return candidate;
    }
  }

  std::set<std::string> taken_;
  int vertex_counter_ = 1;
  int edge_counter_ = 1;
};

void collect_declared_names(const QueryAst& ast, std::set<std::string>& out) {
  auto add_pattern = [&out](const PatternPart& p) {
    for (const auto& n : p.nodes)
      if (n.var) out.insert(*n.var);
    for (const auto& r : p.rels)
      if (r.var) out.insert(*r.var);
  };
  for (const auto& single : ast.singles) {
    for (const auto& part : single.parts) {
      for (const auto& m : part.matches)
        for (const auto& p : m.patterns) add_pattern(p);
      std::visit(
          [&out](const auto& tail) {
            using T = std::decay_t<decltype(tail)>;
            if constexpr (std::is_same_v<T, UnwindOnlyTail>) {
              out.insert(tail.unwind.alias);
            } else {
              for (const auto& it : tail.items)
                if (it.alias) out.insert(*it.alias);
              if constexpr (std::is_same_v<T, WithTail>) {
                if (tail.unwind) out.insert(tail.unwind->alias);
              }
            }
          },
          part.tail);
    }
  }
}

class SingleQueryCompiler {
 public:
  SingleQueryCompiler(FreshNamer& namer) : namer_(namer) {}

  PlanPtr compile_single(const SingleQuery& single) {
    PlanPtr tree;
    for (const auto& part : single.parts) tree = compile_part(part, tree);
    return tree;
  }

 private:
  // ---- variable bookkeeping -------------------------------------------

  void declare(const std::string& name, VarKind kind) {
    auto [it, inserted] = kinds_.try_emplace(name, kind);
    if (inserted) return;
    if (it->second == VarKind::Vertex && kind == VarKind::Edge)
      throw SemanticError("vertex variable '" + name + "' reused as an edge");
    if (it->second == VarKind::Edge && kind == VarKind::Vertex)
      throw SemanticError("edge variable '" + name + "' reused as a vertex");
  }

  // ---- patterns ---------------------------------------------------------

  struct EdgeUse {
    std::string name;
    bool list_valued = false;
  };

  struct ClauseScope {
    std::set<std::string> named_edges;
    std::vector<EdgeUse> edges;  // encounter order, fresh names included
  };

  PlanPtr compile_pattern_chain(const PatternPart& pattern, ClauseScope& clause) {
    const NodePattern& first = pattern.nodes.front();
    std::string head = first.var ? *first.var : namer_.vertex();
    declare(head, VarKind::Vertex);
    PlanPtr node = make_plan(GetVertices{head, first.labels});
    std::vector<std::string> chain_schema{head};
    std::string src = head;
    for (std::size_t i = 0; i < pattern.rels.size(); ++i) {
      const RelPattern& rel = pattern.rels[i];
      const NodePattern& target = pattern.nodes[i + 1];
      std::string edge = rel.var ? *rel.var : namer_.edge();
      declare(edge, VarKind::Edge);
      if (rel.var && !clause.named_edges.insert(*rel.var).second)
        throw SemanticError("edge variable '" + *rel.var +
                            "' used twice within one MATCH clause");
      std::size_t min_hops = rel.range ? rel.range->min : 1;
      std::optional<std::size_t> max_hops = rel.range ? rel.range->max : std::size_t{1};
      bool list_valued = !(max_hops && *max_hops == 1);
      clause.edges.push_back({edge, list_valued});

      std::string dst = target.var ? *target.var : namer_.vertex();
      declare(dst, VarKind::Vertex);
      bool revisit = false;
      for (const auto& bound : chain_schema) revisit = revisit || bound == dst;
      std::string expand_dst = dst;
      if (revisit) expand_dst = namer_.vertex();  // expand to a fresh attribute, then equate
      node = make_plan(Expand{std::move(node), rel.dir, src, expand_dst, target.labels, edge,
                              rel.types, min_hops, max_hops});
      if (revisit)
        node = make_plan(Selection{std::move(node), cmp(CmpOp::Eq, var(expand_dst), var(dst))});
      chain_schema.push_back(edge);
      chain_schema.push_back(expand_dst);
      src = dst;
    }
    return node;
  }

  /// All-different is emitted only when it can filter: two or more edge
  /// variables, or any list-valued one (a trail of a variable-length hop).
  PlanPtr wrap_all_different(PlanPtr tree, const ClauseScope& clause) {
    bool has_list = false;
    for (const auto& e : clause.edges) has_list = has_list || e.list_valued;
    if (clause.edges.size() < 2 && !has_list) return tree;
    if (clause.edges.empty()) return tree;
    std::vector<std::string> names;
    for (const auto& e : clause.edges) names.push_back(e.name);
    return make_plan(AllDifferent{std::move(tree), std::move(names)});
  }

  PlanPtr compile_clause_patterns(const MatchClause& clause) {
    ClauseScope scope;
    PlanPtr tree;
    for (const auto& pattern : clause.patterns) {
      PlanPtr chain = compile_pattern_chain(pattern, scope);
      tree = tree ? make_plan(Join{std::move(tree), std::move(chain)}) : std::move(chain);
    }
    return wrap_all_different(std::move(tree), scope);
  }

  // ---- WHERE ------------------------------------------------------------

  static void split_conjuncts(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (const auto* a = std::get_if<expr::And>(&e->node)) {
      split_conjuncts(a->lhs, out);
      split_conjuncts(a->rhs, out);
    } else {
      out.push_back(e);
    }
  }

  static bool references_aggregate(const ExprPtr& e) { return contains_aggregate(*e); }

  /// Positive `WHERE (pattern)` joins the pattern in; negative
  /// `WHERE NOT (pattern)` left-outer-joins it (elements not already in
  /// scope renamed fresh) and keeps rows where every new attribute is NULL.
  PlanPtr apply_pattern_predicate(PlanPtr acc, const PatternPart& pattern, bool negated) {
    Schema bound = schema_of(acc);
    PatternPart copy = pattern;
    auto freshen = [&](std::optional<std::string>& v, bool is_edge) {
      if (!v) return;
      if (negated && !bound.contains(*v)) v = is_edge ? namer_.edge() : namer_.vertex();
    };
    for (auto& n : copy.nodes) freshen(n.var, false);
    for (auto& r : copy.rels) freshen(r.var, true);

    ClauseScope scope;
    PlanPtr side = wrap_all_different(compile_pattern_chain(copy, scope), scope);
    if (!negated) return make_plan(Join{std::move(acc), std::move(side)});

    Schema side_schema = schema_of(side);
    ExprPtr null_test;
    for (const auto& name : side_schema.names()) {
      if (bound.contains(name)) continue;
      ExprPtr test = is_null(var(name));
      null_test = null_test ? land(std::move(null_test), std::move(test)) : std::move(test);
    }
    if (!null_test)
      throw SemanticError("negative pattern predicate must introduce at least one new variable");
    PlanPtr joined = make_plan(LeftOuterJoin{std::move(acc), std::move(side), nullptr});
    return make_plan(Selection{std::move(joined), std::move(null_test)});
  }

  PlanPtr apply_where(PlanPtr acc, const ExprPtr& where) {
    std::vector<ExprPtr> conjuncts;
    split_conjuncts(where, conjuncts);
    for (const auto& c : conjuncts) {
      if (const auto* p = std::get_if<expr::PatternPredicate>(&c->node)) {
        acc = apply_pattern_predicate(std::move(acc), p->pattern, false);
      } else if (const auto* n = std::get_if<expr::Not>(&c->node);
                 n && std::holds_alternative<expr::PatternPredicate>(n->operand->node)) {
        const auto& p = std::get<expr::PatternPredicate>(n->operand->node);
        acc = apply_pattern_predicate(std::move(acc), p.pattern, true);
      } else {
        if (contains_pattern(c))
          throw SemanticError("pattern predicates may only appear as top-level WHERE conjuncts");
        acc = make_plan(Selection{std::move(acc), c});
      }
    }
    return acc;
  }

  static bool contains_pattern(const ExprPtr& e) {
    if (std::holds_alternative<expr::PatternPredicate>(e->node)) return true;
    bool found = false;
    std::visit(
        [&found](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, expr::Arith> || std::is_same_v<T, expr::Cmp> ||
                        std::is_same_v<T, expr::And> || std::is_same_v<T, expr::Or>) {
            found = contains_pattern(n.lhs) || contains_pattern(n.rhs);
          } else if constexpr (std::is_same_v<T, expr::Neg> || std::is_same_v<T, expr::Not> ||
                               std::is_same_v<T, expr::IsNull>) {
            found = contains_pattern(n.operand);
          } else if constexpr (std::is_same_v<T, expr::AggCall>) {
            if (n.arg) found = contains_pattern(n.arg);
          }
        },
        e->node);
    return found;
  }

  // ---- match blocks -------------------------------------------------------

  PlanPtr compile_match_block(const std::vector<MatchClause>& matches, PlanPtr prior) {
    PlanPtr acc = std::move(prior);
    for (const auto& clause : matches) {
      PlanPtr ctree = compile_clause_patterns(clause);
      if (clause.optional) {
        if (clause.where && contains_pattern(clause.where))
          throw SemanticError("pattern predicates are not supported in OPTIONAL MATCH WHERE");
        PlanPtr left = acc ? std::move(acc) : make_plan(UnitTable{});
        // the WHERE condition joins the match, it never filters prior rows
        acc = make_plan(LeftOuterJoin{std::move(left), std::move(ctree), clause.where});
      } else {
        acc = acc ? make_plan(Join{std::move(acc), std::move(ctree)}) : std::move(ctree);
        if (clause.where) acc = apply_where(std::move(acc), clause.where);
      }
    }
    return acc;
  }

  // ---- query parts ----------------------------------------------------------

  /// Rewrites subexpressions whose canonical text names an output column
  /// into references to that column, so ORDER BY / WITH..WHERE can use
  /// both aliases and the original item spelling.
  static ExprPtr resolve_over_output(const ExprPtr& e, const Schema& out) {
    if (out.contains(to_text(*e))) return var(to_text(*e));
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, expr::Arith>) {
            return arith(n.op, resolve_over_output(n.lhs, out), resolve_over_output(n.rhs, out));
          } else if constexpr (std::is_same_v<T, expr::Cmp>) {
            return cmp(n.op, resolve_over_output(n.lhs, out), resolve_over_output(n.rhs, out));
          } else if constexpr (std::is_same_v<T, expr::And>) {
            return land(resolve_over_output(n.lhs, out), resolve_over_output(n.rhs, out));
          } else if constexpr (std::is_same_v<T, expr::Or>) {
            return lor(resolve_over_output(n.lhs, out), resolve_over_output(n.rhs, out));
          } else if constexpr (std::is_same_v<T, expr::Not>) {
            return lnot(resolve_over_output(n.operand, out));
          } else if constexpr (std::is_same_v<T, expr::Neg>) {
            return make_expr(expr::Neg{resolve_over_output(n.operand, out)});
          } else if constexpr (std::is_same_v<T, expr::IsNull>) {
            return is_null(resolve_over_output(n.operand, out));
          } else {
            return e;
          }
        },
        e->node);
  }

  std::vector<OutputItem> to_output_items(const std::vector<ReturnItem>& items) {
    std::vector<OutputItem> out;
    std::set<std::string> seen;
    for (const auto& item : items) {
      std::string name = item_name(item);
      if (!seen.insert(name).second)
        throw SemanticError("duplicate column name '" + name + "'");
      out.push_back({item.expr, std::move(name)});
    }
    return out;
  }

  /// Grouping when any item aggregates, otherwise a projection. The
  /// projection is skipped for a plain `RETURN v` over the single
  /// attribute v, where it would be the identity.
  PlanPtr apply_items(PlanPtr t, const std::vector<ReturnItem>& items, bool is_return) {
    std::vector<ExprPtr> criteria = determine_grouping_criteria(items);
    bool has_aggregate = false;
    for (const auto& item : items) has_aggregate = has_aggregate || is_aggregate_call(*item.expr);
    std::vector<OutputItem> outputs = to_output_items(items);
    if (has_aggregate)
      return make_plan(Grouping{std::move(t), std::move(criteria), std::move(outputs)});
    if (is_return && items.size() == 1 && !items[0].alias) {
      if (const auto* v = std::get_if<expr::Var>(&items[0].expr->node)) {
        Schema in = schema_of(t);
        if (in.size() == 1 && in.at(0) == v->name) return t;  // identity projection
      }
    }
    return make_plan(Projection{std::move(t), std::move(outputs)});
  }

  void update_kinds(const std::vector<ReturnItem>& items) {
    std::map<std::string, VarKind> next;
    for (const auto& item : items) {
      VarKind kind = VarKind::Other;
      if (const auto* v = std::get_if<expr::Var>(&item.expr->node)) {
        auto it = kinds_.find(v->name);
        if (it != kinds_.end()) kind = it->second;
      }
      next[item_name(item)] = kind;
    }
    kinds_ = std::move(next);
  }

  PlanPtr apply_unwind(PlanPtr t, const UnwindItem& u) {
    ExprPtr source = resolve_over_output(u.source, schema_of(t));
    declare(u.alias, VarKind::Other);
    kinds_[u.alias] = VarKind::Other;
    return make_plan(Unwind{std::move(t), std::move(source), u.alias});
  }

  PlanPtr compile_part(const QueryPart& part, PlanPtr prior) {
    PlanPtr t = compile_match_block(part.matches, std::move(prior));
    if (!t) t = make_plan(UnitTable{});
    return std::visit(
        [&](const auto& tail) -> PlanPtr {
          using T = std::decay_t<decltype(tail)>;
          if constexpr (std::is_same_v<T, UnwindOnlyTail>) {
            return apply_unwind(std::move(t), tail.unwind);
          } else if constexpr (std::is_same_v<T, WithTail>) {
            t = apply_items(std::move(t), tail.items, false);
            if (tail.distinct) t = make_plan(DuplicateElimination{std::move(t)});
            update_kinds(tail.items);
            if (tail.where) {
              ExprPtr where = resolve_over_output(tail.where, schema_of(t));
              t = make_plan(Selection{std::move(t), std::move(where)});
            }
            if (tail.unwind) t = apply_unwind(std::move(t), *tail.unwind);
            return t;
          } else {
            t = apply_items(std::move(t), tail.items, true);
            if (tail.distinct) t = make_plan(DuplicateElimination{std::move(t)});
            if (!tail.order_by.empty()) {
              Schema out = schema_of(t);
              std::vector<SortKey> keys;
              for (const auto& k : tail.order_by)
                keys.push_back({resolve_over_output(k.expr, out), k.ascending});
              t = make_plan(Sort{std::move(t), std::move(keys)});
            }
            if (tail.skip || tail.limit)
              t = make_plan(Top{std::move(t), tail.skip.value_or(0), tail.limit});
            return t;
          }
        },
        part.tail);
  }

  FreshNamer& namer_;
  std::map<std::string, VarKind> kinds_;
};

}  // namespace

std::vector<ExprPtr> determine_grouping_criteria(const std::vector<ReturnItem>& items) {
  std::vector<ExprPtr> criteria;
  for (const auto& item : items) {
    if (is_aggregate_call(*item.expr)) {
      const auto& call = std::get<expr::AggCall>(item.expr->node);
      if (call.arg && contains_aggregate(*call.arg))
        throw SemanticError("Illegal use of aggregation function");
      continue;
    }
    if (contains_aggregate(*item.expr))
      throw SemanticError("Illegal use of aggregation function");
    bool known = false;
    for (const auto& c : criteria) known = known || expr_equal(c, item.expr);
    if (!known) criteria.push_back(item.expr);
  }
  return criteria;
}

PlanPtr compile(const QueryAst& ast) {
  std::set<std::string> declared;
  collect_declared_names(ast, declared);
  FreshNamer namer(std::move(declared));

  PlanPtr tree;
  Schema first_schema;
  for (std::size_t i = 0; i < ast.singles.size(); ++i) {
    PlanPtr single = SingleQueryCompiler(namer).compile_single(ast.singles[i]);
    Schema s = schema_of(single);
    if (i == 0) {
      tree = std::move(single);
      first_schema = std::move(s);
    } else {
      if (s != first_schema)
        throw SemanticError("UNION operands must have the same resulting schema: " +
                            schema_text(first_schema) + " vs " + schema_text(s));
      if (ast.union_all[i - 1])
        tree = make_plan(plan::BagUnion{std::move(tree), std::move(single)});
      else
        tree = make_plan(plan::Union{std::move(tree), std::move(single)});
    }
  }

  std::vector<std::string> diags = validate(tree);
  if (!diags.empty()) {
    std::string msg = diags[0];
    const std::string prefix = "error: ";
    if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
    throw SemanticError(msg);
  }
  return tree;
}

}  // namespace gqe
