#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gqe/expr.hpp"
#include "gqe/schema.hpp"

namespace gqe {

struct AlgebraNode;
using PlanPtr = std::shared_ptr<const AlgebraNode>;

namespace plan {

/// Nullary: one row per vertex carrying all the requested labels.
struct GetVertices {
  std::string var;
  std::vector<std::string> labels;
};

/// Nullary: the relation holding exactly one empty tuple.
struct UnitTable {};

/// Extends each row along edges from `src`, binding `edge` and `dst`.
/// min/max of 1/1 is the single-hop form binding the edge as a scalar;
/// wider ranges enumerate trails and bind a list of edges. Unbounded
/// max (nullopt) is made finite by edge-distinctness within one trail.
struct Expand {
  PlanPtr input;
  Direction dir = Direction::Out;
  std::string src;
  std::string dst;
  std::vector<std::string> dst_labels;
  std::string edge;
  std::vector<std::string> types;
  std::size_t min_hops = 1;
  std::optional<std::size_t> max_hops = 1;
};

/// Keeps rows whose listed edge attributes (lists flattened) are
/// pairwise distinct — the per-MATCH edge uniqueness rule.
struct AllDifferent {
  PlanPtr input;
  std::vector<std::string> edge_vars;
};

/// Multiplies each row by the elements of the list `source` evaluates
/// to, binding them to `target`. A bare attribute source is removed
/// from the schema.
struct Unwind {
  PlanPtr input;
  ExprPtr source;
  std::string target;
};

struct Selection {
  PlanPtr input;
  ExprPtr predicate;
};

struct OutputItem {
  ExprPtr expr;
  std::string name;
};

struct Projection {
  PlanPtr input;
  std::vector<OutputItem> items;
};

/// Groups by the criteria value tuple; emits one row per group.
struct Grouping {
  PlanPtr input;
  std::vector<ExprPtr> criteria;
  std::vector<OutputItem> items;
};

struct DuplicateElimination {
  PlanPtr input;
};

struct SortKey {
  ExprPtr key;
  bool ascending = true;
};

struct Sort {
  PlanPtr input;
  std::vector<SortKey> keys;
};

/// Skip/limit; unbounded limit keeps all remaining rows.
struct Top {
  PlanPtr input;
  std::size_t skip = 0;
  std::optional<std::size_t> limit;
};

struct Union {
  PlanPtr left, right;
};

struct BagUnion {
  PlanPtr left, right;
};

struct Join {
  PlanPtr left, right;
};

/// Natural left outer join; the optional condition must additionally
/// hold for a pair to match. Unmatched left rows are padded with NULL.
struct LeftOuterJoin {
  PlanPtr left, right;
  ExprPtr condition;
};

}  // namespace plan

struct AlgebraNode {
  using Node = std::variant<plan::GetVertices, plan::UnitTable, plan::Expand, plan::AllDifferent,
                            plan::Unwind, plan::Selection, plan::Projection, plan::Grouping,
                            plan::DuplicateElimination, plan::Sort, plan::Top, plan::Union,
                            plan::BagUnion, plan::Join, plan::LeftOuterJoin>;
  Node node;
};

template <typename T>
PlanPtr make_plan(T&& n) {
  return std::make_shared<AlgebraNode>(AlgebraNode{AlgebraNode::Node(std::forward<T>(n))});
}

/// Result schema per the operator rules; throws SchemaError on
/// violations (duplicate attributes, union of differing schemas, ...).
Schema schema_of(const AlgebraNode& node);
inline Schema schema_of(const PlanPtr& node) { return schema_of(*node); }

/// Collects every schema and name-resolution problem in the tree.
/// Empty result means the plan is evaluable.
std::vector<std::string> validate(const AlgebraNode& node);
inline std::vector<std::string> validate(const PlanPtr& node) { return validate(*node); }

/// Deterministic indented-tree rendering: one operator per line, children
/// indented by two spaces. Stable across releases; golden-tested.
std::string render(const AlgebraNode& node);
inline std::string render(const PlanPtr& node) { return render(*node); }

/// Structural equality (operator kinds, parameters, children).
bool plan_equal(const PlanPtr& a, const PlanPtr& b);

}  // namespace gqe
