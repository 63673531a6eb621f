#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/grammar.hpp"
#include "gaspect/source.hpp"

namespace gaspect {

enum class PatternKind {
  Rule,              // symbol pattern followed by production patterns
  AnySymbol,         // #
  NamedSymbol,       // NAME
  Production,        // ':' alternative
  AnyProductions,    // {...}
  Alternative,       // a | b | ...
  Sequence,          // a b c
  Iteration,         // p* p+ p?
  AnySequence,       // ..
  AlternativesRest,  // ...
  AnyLex,            // #lex
  Empty,             // #empty
  Literal,           // 'text'
  VarDef,            // $v=p
  VarRef,            // $v
};

std::string_view to_string(PatternKind kind);

/// Pointcut AST. `text` holds the symbol name, literal text or variable name
/// depending on `kind`.
///
/// Shapes:
///   Rule        children = [symbol pattern, production pattern...]
///   Production  children = [body]
///   Alternative children = members; the last may be AlternativesRest
///   Iteration   children = [inner]
///   VarDef      children = [inner]
struct Pattern {
  PatternKind kind = PatternKind::AnySequence;
  std::string text;
  IterationKind iteration = IterationKind::Star;
  std::vector<Pattern> children;
  ByteSpan span;

  friend bool operator==(const Pattern&, const Pattern&);
};

/// Variable name -> bound grammar-tree nodes, sorted by id, never empty.
using Bindings = std::map<std::string, std::vector<NodeId>, std::less<>>;

struct MatchResult {
  NodeId matched_node;
  Bindings bindings;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Parses a rule pattern such as `# : $tr=# ((PLUS | MINUS) $tr)*`.
/// A trailing ';' is optional.
Pattern parse_rule_pattern(std::string_view text, std::string source_name = "<pattern>");

/// Parses a production pattern (`: ...`, `: {...}`) or an alternative
/// pattern, the two forms accepted after '@' in aspects.
Pattern parse_subpattern(std::string_view text, std::string source_name = "<pattern>");

/// Matches a rule pattern against every SymbolDef of `grammar`.
/// Results are ordered by NodeId.
std::vector<MatchResult> match_rules(const Pattern& pattern, const GrammarTree& grammar);

/// Matches a production/alternative pattern against every descendant of
/// `scope` (pre-order, scope excluded).
std::vector<MatchResult> match_within(const Pattern& pattern, const GrammarTree& grammar,
                                      NodeId scope);

/// Attempts one node. For rule patterns `node` must be a SymbolDef.
std::optional<MatchResult> match_node(const Pattern& pattern, const GrammarTree& grammar,
                                      NodeId node);

/// Exhaustive reference matcher used for differential testing. Enumerates
/// every alignment without pruning and returns every distinct
/// (node, bindings) solution, ordered by node then bindings. For rule
/// patterns the candidates are the SymbolDefs, otherwise every descendant of
/// `scope` (the grammar root when omitted).
std::vector<MatchResult> brute_force_match(const Pattern& pattern, const GrammarTree& grammar);
std::vector<MatchResult> brute_force_match(const Pattern& pattern, const GrammarTree& grammar,
                                           NodeId scope);

/// Names of all variables defined in the pattern, in definition order.
std::vector<std::string> defined_variables(const Pattern& pattern);

}  // namespace gaspect
