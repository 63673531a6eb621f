#pragma once

#include <string>
#include <string_view>

#include "gaspect/annotation.hpp"
#include "gaspect/grammar.hpp"

namespace gaspect {

/// Woven-output document (JSON, two-space indent, fixed key order):
///
///     {
///       "format": "gaspect-woven",
///       "version": 1,
///       "grammar": <grammar source name>,
///       "nodes": [ { "id", "kind", ["name" | "text" | "iteration"], "span": [b, e],
///                    "children": [ids] } ... ],          // ordered by id
///       "annotations": [ { "node", "namespace", "name", "value",
///                          "aspect", "rule" } ... ]       // ordered by node, key
///     }
///
/// Values are tagged objects: {"int": n}, {"str": s}, {"name": s},
/// {"punct": c}, {"seq": [values]}, {"record": [attributes]}; flags carry
/// "value": null. "rule" is -1 for grammar annotations.
std::string serialize_woven(const GrammarTree& grammar, const AnnotationStore& store);

/// Rebuilds the store from a woven-output document. Throws
/// std::invalid_argument when the document does not follow the schema.
AnnotationStore deserialize_store(std::string_view json);

}  // namespace gaspect
