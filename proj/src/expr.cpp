#include "gqe/expr.hpp"

#include <functional>

namespace gqe {

namespace {

using namespace expr;

// Precedence levels, loosest first; mirrors the parser grammar.
enum Prec { POr = 0, PAnd, PNot, PCmp, PAdd, PMul, PUnary, PPrimary };

int precedence_of(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Or>) return POr;
        else if constexpr (std::is_same_v<T, And>) return PAnd;
        else if constexpr (std::is_same_v<T, Not>) return PNot;
        else if constexpr (std::is_same_v<T, Cmp> || std::is_same_v<T, IsNull>) return PCmp;
        else if constexpr (std::is_same_v<T, Arith>)
          return (n.op == ArithOp::Add || n.op == ArithOp::Sub) ? PAdd : PMul;
        else if constexpr (std::is_same_v<T, Neg>) return PUnary;
        else return PPrimary;
      },
      e.node);
}

std::string wrap(const ExprPtr& child, int parent_prec) {
  std::string s = to_text(*child);
  if (precedence_of(*child) < parent_prec) return "(" + s + ")";
  return s;
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "<>";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    default: return ">=";
  }
}

const char* arith_text(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    default: return "/";
  }
}

const char* agg_name(AggFn fn) {
  switch (fn) {
    case AggFn::Count:
    case AggFn::CountDistinct: return "count";
    case AggFn::Sum: return "sum";
    case AggFn::Avg: return "avg";
    case AggFn::Min: return "min";
    case AggFn::Max: return "max";
    default: return "collect";
  }
}

std::string pattern_text(const PatternPart& p) {
  std::string out;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i > 0) {
      const RelPattern& r = p.rels[i - 1];
      out += r.dir == Direction::In ? "<-[" : "-[";
      if (r.var) out += *r.var;
      for (std::size_t t = 0; t < r.types.size(); ++t) out += (t == 0 ? ":" : "|") + r.types[t];
      if (r.range) {
        out += "*" + std::to_string(r.range->min) + "..";
        if (r.range->max) out += std::to_string(*r.range->max);
      }
      out += r.dir == Direction::Out ? "]->" : "]-";
    }
    out += "(";
    if (p.nodes[i].var) out += *p.nodes[i].var;
    for (const auto& l : p.nodes[i].labels) out += ":" + l;
    out += ")";
  }
  return out;
}

}  // namespace

std::string to_text(const Expr& e) {
  using namespace expr;
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return value_literal_text(n.value);
        } else if constexpr (std::is_same_v<T, Var>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, PropAccess>) {
          return n.var + "." + n.prop;
        } else if constexpr (std::is_same_v<T, Arith>) {
          int p = (n.op == ArithOp::Add || n.op == ArithOp::Sub) ? PAdd : PMul;
          // left-assoc: right child needs parens at equal precedence
          std::string rhs = to_text(*n.rhs);
          if (precedence_of(*n.rhs) <= p) rhs = "(" + rhs + ")";
          return wrap(n.lhs, p) + " " + arith_text(n.op) + " " + rhs;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return "-" + wrap(n.operand, PUnary);
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return wrap(n.lhs, PAdd) + " " + cmp_text(n.op) + " " + wrap(n.rhs, PAdd);
        } else if constexpr (std::is_same_v<T, And>) {
          return wrap(n.lhs, PAnd) + " AND " + wrap(n.rhs, PAnd);
        } else if constexpr (std::is_same_v<T, Or>) {
          return wrap(n.lhs, POr) + " OR " + wrap(n.rhs, POr);
        } else if constexpr (std::is_same_v<T, Not>) {
          return "NOT " + wrap(n.operand, PNot);
        } else if constexpr (std::is_same_v<T, HasLabels>) {
          std::string out = n.var;
          for (const auto& l : n.labels) out += ":" + l;
          return out;
        } else if constexpr (std::is_same_v<T, IsNull>) {
          return wrap(n.operand, PAdd) + " IS NULL";
        } else if constexpr (std::is_same_v<T, AggCall>) {
          std::string arg = n.arg ? to_text(*n.arg) : "*";
          if (n.fn == AggFn::CountDistinct) arg = "DISTINCT " + arg;
          return std::string(agg_name(n.fn)) + "(" + arg + ")";
        } else {
          return pattern_text(n.pattern);
        }
      },
      e.node);
}

bool contains_aggregate(const Expr& e) {
  using namespace expr;
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AggCall>) return true;
        else if constexpr (std::is_same_v<T, Arith> || std::is_same_v<T, Cmp> ||
                           std::is_same_v<T, And> || std::is_same_v<T, Or>)
          return contains_aggregate(*n.lhs) || contains_aggregate(*n.rhs);
        else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                           std::is_same_v<T, IsNull>)
          return contains_aggregate(*n.operand);
        else return false;
      },
      e.node);
}

bool is_aggregate_call(const Expr& e) { return std::holds_alternative<expr::AggCall>(e.node); }

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return to_text(*a) == to_text(*b);
}

void collect_variables(const Expr& e, std::vector<std::string>& out) {
  using namespace expr;
  std::visit(
      [&out](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Var>) out.push_back(n.name);
        else if constexpr (std::is_same_v<T, PropAccess>) out.push_back(n.var);
        else if constexpr (std::is_same_v<T, HasLabels>) out.push_back(n.var);
        else if constexpr (std::is_same_v<T, Arith> || std::is_same_v<T, Cmp> ||
                           std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          collect_variables(*n.lhs, out);
          collect_variables(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not> ||
                             std::is_same_v<T, IsNull>) {
          collect_variables(*n.operand, out);
        } else if constexpr (std::is_same_v<T, AggCall>) {
          if (n.arg) collect_variables(*n.arg, out);
        }
      },
      e.node);
}

}  // namespace gqe
