#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gqe/pattern.hpp"
#include "gqe/value.hpp"

namespace gqe {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class ArithOp { Add, Sub, Mul, Div };
enum class AggFn { Count, CountDistinct, Sum, Avg, Min, Max, Collect };

namespace expr {

struct Literal {
  Value value;
};

struct Var {
  std::string name;
};

/// `x.p` — property access on the element held by attribute x.
struct PropAccess {
  std::string var;
  std::string prop;
};

struct Arith {
  ArithOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Neg {
  ExprPtr operand;
};

struct Cmp {
  CmpOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct And {
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Or {
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Not {
  ExprPtr operand;
};

/// Label containment test on a vertex attribute (subset semantics).
struct HasLabels {
  std::string var;
  std::vector<std::string> labels;
};

/// NULL test; compiler-generated for negative pattern predicates.
struct IsNull {
  ExprPtr operand;
};

/// Aggregate call; null arg means `count(*)`.
struct AggCall {
  AggFn fn;
  ExprPtr arg;
};

/// Surface-only: a pattern used as a boolean in WHERE. The compiler
/// replaces these; they never reach the evaluator.
struct PatternPredicate {
  PatternPart pattern;
};

}  // namespace expr

struct Expr {
  using Node = std::variant<expr::Literal, expr::Var, expr::PropAccess, expr::Arith, expr::Neg,
                            expr::Cmp, expr::And, expr::Or, expr::Not, expr::HasLabels,
                            expr::IsNull, expr::AggCall, expr::PatternPredicate>;
  Node node;
};

template <typename T>
ExprPtr make_expr(T&& n) {
  return std::make_shared<Expr>(Expr{Expr::Node(std::forward<T>(n))});
}

inline ExprPtr lit(Value v) { return make_expr(expr::Literal{std::move(v)}); }
inline ExprPtr var(std::string name) { return make_expr(expr::Var{std::move(name)}); }
inline ExprPtr prop(std::string v, std::string p) {
  return make_expr(expr::PropAccess{std::move(v), std::move(p)});
}
inline ExprPtr cmp(CmpOp op, ExprPtr l, ExprPtr r) {
  return make_expr(expr::Cmp{op, std::move(l), std::move(r)});
}
inline ExprPtr arith(ArithOp op, ExprPtr l, ExprPtr r) {
  return make_expr(expr::Arith{op, std::move(l), std::move(r)});
}
inline ExprPtr land(ExprPtr l, ExprPtr r) { return make_expr(expr::And{std::move(l), std::move(r)}); }
inline ExprPtr lor(ExprPtr l, ExprPtr r) { return make_expr(expr::Or{std::move(l), std::move(r)}); }
inline ExprPtr lnot(ExprPtr e) { return make_expr(expr::Not{std::move(e)}); }
inline ExprPtr is_null(ExprPtr e) { return make_expr(expr::IsNull{std::move(e)}); }
inline ExprPtr agg(AggFn fn, ExprPtr arg) { return make_expr(expr::AggCall{fn, std::move(arg)}); }
inline ExprPtr count_star() { return make_expr(expr::AggCall{AggFn::Count, nullptr}); }

/// Canonical text of an expression: used for rendering plans, deriving
/// unaliased column names and as the structural-equality key.
std::string to_text(const Expr& e);
inline std::string to_text(const ExprPtr& e) { return to_text(*e); }

bool contains_aggregate(const Expr& e);
/// True when the expression itself is an aggregate call.
bool is_aggregate_call(const Expr& e);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Attribute names the expression reads (Var and PropAccess roots).
void collect_variables(const Expr& e, std::vector<std::string>& out);

}  // namespace gqe
