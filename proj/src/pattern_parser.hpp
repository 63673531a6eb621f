// Pattern parsing over a shared cursor, reused by the aspect parser.
#pragma once

#include "gaspect/pattern.hpp"
#include "syntax.hpp"

namespace gaspect::detail {

/// Rule pattern without the trailing ';'.
Pattern parse_rule_pattern(syntax::Cursor& cur);

/// Production or alternative pattern. Stops before the ':' that introduces
/// a subpattern body.
Pattern parse_subpattern(syntax::Cursor& cur);

/// Enforces unique VarDef names and VarRefs that follow their VarDef.
void check_variables(const Pattern& pattern, const syntax::Cursor& cur);

/// True at `$name .` or `$name {` (a variable annotation, not a pattern).
bool at_variable_annotation(const syntax::Cursor& cur, std::size_t ahead = 0);

}  // namespace gaspect::detail
