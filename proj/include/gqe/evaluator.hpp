#pragma once

#include "gqe/algebra.hpp"
#include "gqe/property_graph.hpp"
#include "gqe/relation.hpp"

namespace gqe {

/// Bottom-up, fully materializing evaluation with bag semantics.
/// The plan must validate; vertex/edge iteration is in id order so
/// unordered results are reproducible row for row.
Relation evaluate(const AlgebraNode& plan, const PropertyGraph& g);
inline Relation evaluate(const PlanPtr& plan, const PropertyGraph& g) {
  return evaluate(*plan, g);
}

/// Scalar expression evaluation over one row. Three-valued logic:
/// comparisons with NULL yield NULL, AND/OR/NOT are Kleene, arithmetic
/// on NULL and division by zero yield NULL.
Value eval_expr(const Expr& e, const Schema& schema, const Tuple& row, const PropertyGraph& g);

}  // namespace gqe
