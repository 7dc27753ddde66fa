#pragma once

#include <string_view>

#include "gqe/ast.hpp"
#include "gqe/errors.hpp"

namespace gqe {

/// Parses a query. Keywords are case-insensitive, identifiers are not.
/// Throws ParseError with a 1-based line/column on syntax errors and on
/// clause orders outside MATCH*((WITH UNWIND?)|UNWIND|RETURN) per part.
QueryAst parse(std::string_view text);

/// Standalone expression entry point (tests, debugging).
ExprPtr parse_expr(std::string_view text);

}  // namespace gqe
