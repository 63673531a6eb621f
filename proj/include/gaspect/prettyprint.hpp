#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaspect/annotation.hpp"
#include "gaspect/runtime_parser.hpp"

namespace gaspect {

struct WhitespaceItem {
  enum class Kind { Text, IncIndent, DecIndent };

  Kind kind = Kind::Text;
  std::string text;

  static WhitespaceItem of(std::string s) { return {Kind::Text, std::move(s)}; }
  static WhitespaceItem inc() { return {Kind::IncIndent, {}}; }
  static WhitespaceItem dec() { return {Kind::DecIndent, {}}; }

  friend bool operator==(const WhitespaceItem&, const WhitespaceItem&) = default;
};

using WhitespaceProgram = std::vector<WhitespaceItem>;

/// A `before`/`after`/`indentUnit` value that does not describe whitespace.
class WhitespaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 'text' becomes one Text item; a `{{ }}` sequence is decoded member by
/// member, where members are strings or the names increaseIndent and
/// decreaseIndent. Throws WhitespaceError otherwise.
WhitespaceProgram decode_whitespace(const Value& value);

struct Whitespace {
  WhitespaceProgram before;
  WhitespaceProgram after;
};

/// Whitespace around the `k`-th token of `tree`. `before` concatenates the
/// `before` programs of every node whose derivation starts at the token,
/// outermost first; `after` concatenates the `after` programs of every node
/// whose derivation ends there, innermost first. A side without any such
/// attribute falls back to the grammar annotation's defaultBefore or
/// defaultAfter.
Whitespace effective_whitespace(const ParseTree& tree, std::size_t k, const AnnotationStore& store);

/// Re-emits the tokens of `tree` with the whitespace the store prescribes.
/// Indentation (`indentUnit` on the grammar annotation, four spaces by
/// default) is written before the first visible character of each line.
/// Indent underflow is clamped and reported through `warnings`.
std::string format(const ParseTree& tree, const AnnotationStore& store,
                   std::vector<std::string>* warnings = nullptr);

}  // namespace gaspect
