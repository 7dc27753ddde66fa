#pragma once

#include "gqe/algebra.hpp"
#include "gqe/ast.hpp"

namespace gqe {

/// Lowers a parsed query to an algebra plan, bottom-up: patterns become
/// get-vertices/expand chains, comma patterns and MATCH clauses join,
/// edge uniqueness becomes all-different, RETURN/WITH become
/// grouping/projection with the trailing modifiers, UNION combines
/// single queries left-deep. The result always validates.
/// Throws SemanticError on name conflicts, aggregation misuse and
/// union schema mismatches.
PlanPtr compile(const QueryAst& ast);

/// The implicit grouping key of a RETURN/WITH item list: every item
/// without an aggregate call, in order of first appearance. Items with
/// an aggregate anywhere but the outermost level raise
/// SemanticError("Illegal use of aggregation function").
std::vector<ExprPtr> determine_grouping_criteria(const std::vector<ReturnItem>& items);

}  // namespace gqe
