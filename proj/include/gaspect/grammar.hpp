#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/source.hpp"

namespace gaspect {

/// Identity of a grammar-tree node. Ids are assigned in pre-order at parse
/// time, so identical text always yields identical ids.
struct NodeId {
  std::uint32_t value = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(NodeId id);

/// Every node kind is a join point that advice can attach to.
enum class NodeKind {
  Grammar,
  SymbolDef,
  Production,
  Alternative,
  Sequence,
  Iteration,
  SymbolRef,
  Empty,
  Literal,
};

enum class IterationKind { Star, Plus, Optional };

std::string_view to_string(NodeKind kind);
std::string_view to_string(IterationKind kind);
char suffix_char(IterationKind kind);

/// Terminals are named with an uppercase initial, nonterminals lowercase.
bool is_terminal_name(std::string_view name);

struct GtNode {
  NodeId id;
  NodeKind kind = NodeKind::Empty;
  IterationKind iteration = IterationKind::Star;  // Iteration only
  std::string text;  // symbol name (SymbolDef, SymbolRef) or literal text
  std::vector<NodeId> children;
  std::optional<NodeId> parent;
  ByteSpan span;
  SourceLoc loc;

  bool is_terminal_ref() const { return kind == NodeKind::SymbolRef && is_terminal_name(text); }
  bool is_nonterminal_ref() const {
    return kind == NodeKind::SymbolRef && !is_terminal_name(text);
  }
  /// True for nodes that appear inside production bodies.
  bool is_expression() const;
};

/// Immutable grammar tree. Nodes live in a flat arena indexed by NodeId.
class GrammarTree {
 public:
  const GtNode& root() const { return nodes_.front(); }
  const GtNode& node(NodeId id) const { return nodes_.at(id.value); }
  const GtNode& operator[](NodeId id) const { return node(id); }
  std::size_t size() const { return nodes_.size(); }
  std::span<const GtNode> nodes() const { return nodes_; }
  bool contains(NodeId id) const { return id.value < nodes_.size(); }

  /// SymbolDef nodes in definition order.
  const std::vector<NodeId>& rules() const { return root().children; }
  std::optional<NodeId> find_rule(std::string_view name) const;
  const std::map<std::string, NodeId, std::less<>>& rule_index() const { return rule_index_; }

  const std::string& source_name() const { return source_name_; }
  const std::string& source_text() const { return source_text_; }

 private:
  friend class GrammarBuilder;

  std::vector<GtNode> nodes_;
  std::map<std::string, NodeId, std::less<>> rule_index_;
  std::string source_name_;
  std::string source_text_;
};

/// Parses the grammar notation:
///
///     rule       := NAME (':' alternative)+ ';'
///     alternative:= sequence ('|' sequence)*
///     sequence   := iteration+
///     iteration  := atom ('*' | '+' | '?')?
///     atom       := '(' alternative ')' | NAME | 'literal' | #empty
///
/// Parenthesized groups, one-element sequences and one-branch alternatives
/// are normalized away. Throws SyntaxError for malformed text, dangling
/// nonterminal references and duplicate definitions.
GrammarTree parse_grammar(std::string_view text, std::string source_name = "<grammar>");

/// Emits the grammar in the notation accepted by parse_grammar.
std::string serialize_grammar(const GrammarTree& tree);

/// Renders a single expression node (production body or part of it).
std::string serialize_expression(const GrammarTree& tree, NodeId id);

/// Pre-order traversal of the subtree rooted at `id`, excluding `id`.
std::vector<NodeId> descendants(const GrammarTree& tree, NodeId id);

/// Compares shape, kinds, names and literal texts; ignores ids and spans.
bool structurally_equal(const GrammarTree& a, NodeId x, const GrammarTree& b, NodeId y);
bool structurally_equal(const GrammarTree& a, const GrammarTree& b);

/// Hash over the same data structurally_equal compares.
std::size_t structural_hash(const GrammarTree& tree);

}  // namespace gaspect
