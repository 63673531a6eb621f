#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaspect/annotation.hpp"
#include "gaspect/grammar.hpp"
#include "gaspect/pattern.hpp"

namespace gaspect {

/// Allowed match count [min..max]; max == nullopt means unbounded.
struct Multiplicity {
  std::size_t min = 1;
  std::optional<std::size_t> max;

  static Multiplicity one_or_more() { return {1, std::nullopt}; }

  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

std::string to_string(const Multiplicity& m);

bool check_multiplicity(std::size_t count, const Multiplicity& m);

struct VariableAnnotation {
  std::string variable;
  Annotation annotation;
  SourceLoc loc;
};

struct Subrule;

/// `@[m] pattern : body`. A direct annotation body attaches to the whole
/// sub-match; otherwise `subrules` apply inside each sub-match.
struct Subpattern {
  Multiplicity multiplicity;
  Pattern pattern;
  std::string pattern_text;
  std::optional<Annotation> annotation;
  std::vector<Subrule> subrules;
  SourceLoc loc;
};

struct Subrule {
  std::variant<Subpattern, VariableAnnotation> item;
};

struct AnnotationRule {
  Multiplicity multiplicity;
  Pattern pattern;
  std::string pattern_text;
  std::vector<Subrule> subrules;
  SourceLoc loc;
};

struct Aspect {
  std::string source_name;
  std::optional<Annotation> grammar_annotation;
  std::vector<AnnotationRule> rules;
};

/// Parses an aspect file:
///
///     aspect      := annotation? rule*
///     rule        := multiplicity? rulePattern subrule* [';']
///     subrule     := '@' multiplicity? pattern ':' (annotation ';' | subrule* [';'])
///                  | '$' NAME annotation ';'
///     multiplicity:= '[' (INT | '*') ('..' (INT | '*'))? ']'
///
/// Rule patterns carry no ';' of their own. A bare ';' closes the innermost
/// open rule or subpattern; a rule without subrules must be closed by ';'
/// or end of input.
Aspect parse_aspect(std::string_view text, std::string source_name = "<aspect>");

/// A pattern matched a number of times outside its multiplicity.
struct WeaveError {
  std::string aspect;
  int rule = 0;  // 0-based index within the aspect
  std::string pattern_text;
  SourceLoc loc;
  Multiplicity expected;
  std::size_t actual = 0;
  std::vector<ByteSpan> matched_spans;
  /// Span of the enclosing match for subpatterns.
  std::optional<ByteSpan> scope;

  std::string message() const;
};

struct WeaveResult {
  AnnotationStore store;
  std::vector<WeaveError> errors;
  std::vector<ConflictError> conflicts;

  bool ok() const { return errors.empty() && conflicts.empty(); }
};

/// Applies aspects in order. Every multiplicity violation and conflict is
/// collected; the store is only meaningful when ok().
///
/// Advice from a single annotation rule is merged before it reaches the
/// store, with later advice overriding earlier advice for the same node and
/// attribute. Different rules (or aspects) that disagree are conflicts.
WeaveResult weave(const GrammarTree& grammar, const std::vector<Aspect>& aspects);

}  // namespace gaspect
