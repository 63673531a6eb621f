#pragma once

#include "gaspect/annotation.hpp"
#include "syntax.hpp"

namespace gaspect::detail {

/// `{ ... }` or `.attr`. Duplicate (namespace, name) pairs are rejected.
Annotation parse_annotation(syntax::Cursor& cur);

}  // namespace gaspect::detail
