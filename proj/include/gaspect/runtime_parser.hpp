#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/grammar.hpp"
#include "gaspect/lexer.hpp"

namespace gaspect {

/// One instance of a grammar-tree node in a derivation. Rule applications
/// appear as SymbolRef -> SymbolDef -> Production -> body; an Iteration
/// node holds one child per repetition. Leaves are tokens matched by a
/// Literal or terminal SymbolRef.
struct ParseNode {
  NodeId gt;
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
  /// Half-open token range this node derives; empty for nodes deriving
  /// nothing.
  std::size_t begin = 0;
  std::size_t end = 0;
  /// Set on leaves.
  std::optional<std::size_t> token;
  /// Production index on SymbolDef nodes, branch index on Alternative nodes.
  int choice = -1;

  bool is_leaf() const { return token.has_value(); }
};

class ParseTree {
 public:
  ParseTree(std::vector<ParseNode> nodes, std::vector<Token> tokens);

  const ParseNode& root() const { return nodes_.front(); }
  const ParseNode& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<ParseNode>& nodes() const { return nodes_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  /// Leaf node indices in token order.
  const std::vector<std::size_t>& leaves() const { return leaves_; }

 private:
  std::vector<ParseNode> nodes_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> leaves_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t token_index, std::size_t offset, std::string found,
             std::vector<std::string> expected);

  /// Index of the first token that could not be consumed (== token count
  /// at end of input).
  std::size_t token_index;
  /// Byte offset of that token, or of the end of the last token.
  std::size_t offset;
  std::string found;
  /// Sorted descriptions of the tokens that would have been accepted.
  std::vector<std::string> expected;
};

/// Earley parse of `tokens` from the rule `start`. Ambiguities resolve to the
/// earliest production or branch, and earlier sequence elements take the
/// longest span. Throws std::invalid_argument when `start` is not defined.
ParseTree parse_input(const GrammarTree& grammar, std::string_view start, std::vector<Token> tokens);

}  // namespace gaspect
