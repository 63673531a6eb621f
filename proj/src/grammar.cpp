#include "gaspect/grammar.hpp"

#include <cctype>
#include <set>

#include "syntax.hpp"

namespace gaspect {

std::string to_string(NodeId id) { return "#" + std::to_string(id.value); }

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Grammar: return "Grammar";
    case NodeKind::SymbolDef: return "SymbolDef";
    case NodeKind::Production: return "Production";
    case NodeKind::Alternative: return "Alternative";
    case NodeKind::Sequence: return "Sequence";
    case NodeKind::Iteration: return "Iteration";
    case NodeKind::SymbolRef: return "SymbolRef";
    case NodeKind::Empty: return "Empty";
    case NodeKind::Literal: return "Literal";
  }
  return "?";
}

std::string_view to_string(IterationKind kind) {
  switch (kind) {
    case IterationKind::Star: return "star";
    case IterationKind::Plus: return "plus";
    case IterationKind::Optional: return "opt";
  }
  return "?";
}

char suffix_char(IterationKind kind) {
  switch (kind) {
    case IterationKind::Star: return '*';
    case IterationKind::Plus: return '+';
    case IterationKind::Optional: return '?';
  }
  return '?';
}

bool is_terminal_name(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

bool GtNode::is_expression() const {
  switch (kind) {
    case NodeKind::Grammar:
    case NodeKind::SymbolDef:
    case NodeKind::Production:
      return false;
    default:
      return true;
  }
}

std::optional<NodeId> GrammarTree::find_rule(std::string_view name) const {
  auto it = rule_index_.find(name);
  if (it == rule_index_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct RawNode {
  NodeKind kind = NodeKind::Empty;
  IterationKind iteration = IterationKind::Star;
  std::string text;
  std::vector<RawNode> children;
  ByteSpan span;
};

class GrammarParser {
 public:
  GrammarParser(std::string_view text, const std::string& name) : cur_(text, name) {}

  RawNode parse() {
    RawNode grammar{NodeKind::Grammar, {}, {}, {}, {0, cur_.text().size()}};
    while (!cur_.at_end()) grammar.children.push_back(rule());
    return grammar;
  }

 private:
  RawNode rule() {
    const auto& name = cur_.expect(syntax::Tok::Name, "rule name");
    RawNode def{NodeKind::SymbolDef, {}, name.text, {}, {name.begin, name.end}};
    if (!cur_.peek().is(':')) {
      cur_.fail(cur_.peek(), "expected ':' after rule name, found " + syntax::describe(cur_.peek()));
    }
    while (cur_.peek().is(':')) {
      const auto& colon = cur_.next();
      RawNode body = alternative();
      RawNode prod{NodeKind::Production, {}, {}, {}, {colon.begin, body.span.end}};
      prod.children.push_back(std::move(body));
      def.children.push_back(std::move(prod));
    }
    const auto& semi = cur_.expect(';', "';' or ':'");
    def.span.end = semi.end;
    return def;
  }

  RawNode alternative() {
    std::vector<RawNode> branches;
    branches.push_back(sequence());
    while (cur_.accept('|')) branches.push_back(sequence());
    if (branches.size() == 1) return std::move(branches.front());
    RawNode alt{NodeKind::Alternative, {}, {}, {}, {branches.front().span.begin, branches.back().span.end}};
    alt.children = std::move(branches);
    return alt;
  }

  bool starts_atom() const {
    const auto& t = cur_.peek();
    return t.kind == syntax::Tok::Name || t.kind == syntax::Tok::String ||
           t.kind == syntax::Tok::HashEmpty || t.is('(');
  }

  RawNode sequence() {
    if (!starts_atom()) {
      cur_.fail(cur_.peek(), "expected a grammar expression, found " + syntax::describe(cur_.peek()));
    }
    std::vector<RawNode> items;
    while (starts_atom()) items.push_back(iteration());
    if (items.size() == 1) return std::move(items.front());
    RawNode seq{NodeKind::Sequence, {}, {}, {}, {items.front().span.begin, items.back().span.end}};
    seq.children = std::move(items);
    return seq;
  }

  RawNode iteration() {
    RawNode inner = atom();
    const auto& t = cur_.peek();
    std::optional<IterationKind> kind;
    if (t.is('*')) kind = IterationKind::Star;
    if (t.is('+')) kind = IterationKind::Plus;
    if (t.is('?')) kind = IterationKind::Optional;
    if (!kind) return inner;
    const auto& suffix = cur_.next();
    RawNode it{NodeKind::Iteration, *kind, {}, {}, {inner.span.begin, suffix.end}};
    it.children.push_back(std::move(inner));
    return it;
  }

  RawNode atom() {
    const auto& t = cur_.next();
    switch (t.kind) {
      case syntax::Tok::Name:
        return RawNode{NodeKind::SymbolRef, {}, t.text, {}, {t.begin, t.end}};
      case syntax::Tok::String:
        if (t.text.empty()) cur_.fail(t, "empty literal");
        return RawNode{NodeKind::Literal, {}, t.text, {}, {t.begin, t.end}};
      case syntax::Tok::HashEmpty:
        return RawNode{NodeKind::Empty, {}, {}, {}, {t.begin, t.end}};
      default:
        break;
    }
    // '('
    RawNode inner = alternative();
    cur_.expect(')', "')'");
    return inner;
  }

  syntax::Cursor cur_;
};

}  // namespace

class GrammarBuilder {
 public:
  static GrammarTree build(const RawNode& raw, std::string_view text, std::string name) {
    GrammarTree tree;
    tree.source_name_ = std::move(name);
    tree.source_text_ = std::string(text);
    add(tree, raw, std::nullopt);
    for (NodeId def : tree.root().children) {
      const GtNode& n = tree.node(def);
      if (!tree.rule_index_.emplace(n.text, def).second) {
        throw SyntaxError(tree.source_name_, n.loc, "duplicate definition of '" + n.text + "'");
      }
    }
    for (const GtNode& n : tree.nodes_) {
      if (n.is_nonterminal_ref() && !tree.rule_index_.contains(n.text)) {
        throw SyntaxError(tree.source_name_, n.loc,
                          "reference to undefined nonterminal '" + n.text + "'");
      }
    }
    return tree;
  }

 private:
  static NodeId add(GrammarTree& tree, const RawNode& raw, std::optional<NodeId> parent) {
    NodeId id{static_cast<std::uint32_t>(tree.nodes_.size())};
    GtNode node;
    node.id = id;
    node.kind = raw.kind;
    node.iteration = raw.iteration;
    node.text = raw.text;
    node.parent = parent;
    node.span = raw.span;
    node.loc = locate(tree.source_text_, raw.span.begin);
    tree.nodes_.push_back(std::move(node));
    std::vector<NodeId> children;
    for (const auto& c : raw.children) children.push_back(add(tree, c, id));
    tree.nodes_[id.value].children = std::move(children);
    return id;
  }
};

GrammarTree parse_grammar(std::string_view text, std::string source_name) {
  GrammarParser parser(text, source_name);
  RawNode raw = parser.parse();
  return GrammarBuilder::build(raw, text, std::move(source_name));
}

namespace {

bool needs_parens(NodeKind parent, NodeKind child) {
  switch (child) {
    case NodeKind::Alternative:
      return parent == NodeKind::Sequence || parent == NodeKind::Alternative ||
             parent == NodeKind::Iteration;
    case NodeKind::Sequence:
      return parent == NodeKind::Sequence || parent == NodeKind::Iteration;
    case NodeKind::Iteration:
      return parent == NodeKind::Iteration;
    default:
      return false;
  }
}

void emit(const GrammarTree& tree, NodeId id, std::string& out) {
  const GtNode& n = tree.node(id);
  auto child = [&](NodeId c) {
    bool parens = needs_parens(n.kind, tree.node(c).kind);
    if (parens) out += '(';
    emit(tree, c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case NodeKind::Grammar:
      for (NodeId c : n.children) emit(tree, c, out);
      break;
    case NodeKind::SymbolDef:
      out += n.text;
      for (NodeId c : n.children) {
        out += "\n    : ";
        emit(tree, c, out);
      }
      out += "\n    ;\n";
      break;
    case NodeKind::Production:
      emit(tree, n.children.front(), out);
      break;
    case NodeKind::Alternative:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += " | ";
        child(n.children[i]);
      }
      break;
    case NodeKind::Sequence:
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += ' ';
        child(n.children[i]);
      }
      break;
    case NodeKind::Iteration:
      child(n.children.front());
      out += suffix_char(n.iteration);
      break;
    case NodeKind::SymbolRef:
      out += n.text;
      break;
    case NodeKind::Empty:
      out += "#empty";
      break;
    case NodeKind::Literal:
      out += syntax::quote(n.text);
      break;
  }
}

}  // namespace

std::string serialize_grammar(const GrammarTree& tree) {
  std::string out;
  emit(tree, tree.root().id, out);
  return out;
}

std::string serialize_expression(const GrammarTree& tree, NodeId id) {
  std::string out;
  emit(tree, id, out);
  return out;
}

std::vector<NodeId> descendants(const GrammarTree& tree, NodeId id) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack(tree.node(id).children.rbegin(), tree.node(id).children.rend());
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = tree.node(cur).children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
  return out;
}

bool structurally_equal(const GrammarTree& a, NodeId x, const GrammarTree& b, NodeId y) {
  const GtNode& n = a.node(x);
  const GtNode& m = b.node(y);
  if (n.kind != m.kind || n.text != m.text || n.children.size() != m.children.size()) return false;
  if (n.kind == NodeKind::Iteration && n.iteration != m.iteration) return false;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (!structurally_equal(a, n.children[i], b, m.children[i])) return false;
  }
  return true;
}

bool structurally_equal(const GrammarTree& a, const GrammarTree& b) {
  return structurally_equal(a, a.root().id, b, b.root().id);
}

std::size_t structural_hash(const GrammarTree& tree) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (const GtNode& n : tree.nodes()) {
    mix(static_cast<std::size_t>(n.kind));
    mix(static_cast<std::size_t>(n.iteration));
    mix(std::hash<std::string>{}(n.text));
    mix(n.children.size());
  }
  return h;
}

}  // namespace gaspect
