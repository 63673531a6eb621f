// Earley recognizer over a context-free grammar compiled from the grammar
// tree, followed by a memoized tree extraction.
//
// Every Def, Production, Sequence, Alternative, Iteration, Empty and
// nonterminal SymbolRef node becomes a nonterminal named by its NodeId;
// Literals and terminal SymbolRefs are the terminals. Iterations are
// left-recursive (x* : ε | x* x).

#include "gaspect/runtime_parser.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "syntax.hpp"

namespace gaspect {

ParseTree::ParseTree(std::vector<ParseNode> nodes, std::vector<Token> tokens)
    : nodes_(std::move(nodes)), tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) leaves_.push_back(i);
  }
  std::sort(leaves_.begin(), leaves_.end(),
            [&](std::size_t a, std::size_t b) { return *nodes_[a].token < *nodes_[b].token; });
}

namespace {

std::string parse_message(const std::string& found, const std::vector<std::string>& expected) {
  std::string out = "unexpected " + found;
  if (expected.empty()) return out;
  out += ", expected ";
  if (expected.size() > 1) out += "one of ";
  for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t token_index, std::size_t offset, std::string found,
                       std::vector<std::string> expected)
    : std::runtime_error(parse_message(found, expected)),
      token_index(token_index),
      offset(offset),
      found(std::move(found)),
      expected(std::move(expected)) {}

namespace {

struct Sym {
  bool terminal = false;
  std::uint32_t id = 0;  // grammar-tree node
};

struct Rule {
  std::uint32_t lhs = 0;
  std::vector<Sym> rhs;
  int choice = 0;
};

class Cfg {
 public:
  explicit Cfg(const GrammarTree& g) : g_(g), by_lhs_(g.size()), nullable_(g.size(), false) {
    for (const GtNode& n : g.nodes()) compile(n);
    for (bool changed = true; changed;) {
      changed = false;
      for (const Rule& r : rules_) {
        if (nullable_[r.lhs]) continue;
        bool all = std::all_of(r.rhs.begin(), r.rhs.end(),
                               [&](const Sym& s) { return !s.terminal && nullable_[s.id]; });
        if (all) nullable_[r.lhs] = changed = true;
      }
    }
  }

  const Rule& rule(std::size_t i) const { return rules_[i]; }
  const std::vector<std::size_t>& rules_of(std::uint32_t nt) const { return by_lhs_[nt]; }
  bool nullable(std::uint32_t nt) const { return nullable_[nt]; }

  bool matches(const Sym& s, const Token& t) const {
    const GtNode& n = g_.node(NodeId{s.id});
    if (t.kind == Token::Kind::Literal) return n.kind == NodeKind::Literal && n.text == t.name;
    return n.is_terminal_ref() && n.text == t.name;
  }

  std::string describe(const Sym& s) const {
    const GtNode& n = g_.node(NodeId{s.id});
    return n.kind == NodeKind::Literal ? gaspect::describe(Token{Token::Kind::Literal, n.text, n.text, {}})
                                       : n.text;
  }

 private:
  Sym sym(NodeId id) const {
    const GtNode& n = g_.node(id);
    return Sym{n.kind == NodeKind::Literal || n.is_terminal_ref(), id.value};
  }

  void add(const GtNode& n, std::vector<Sym> rhs, int choice = 0) {
    by_lhs_[n.id.value].push_back(rules_.size());
    rules_.push_back(Rule{n.id.value, std::move(rhs), choice});
  }

  void compile(const GtNode& n) {
    Sym self{false, n.id.value};
    switch (n.kind) {
      case NodeKind::SymbolDef:
      case NodeKind::Alternative:
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          add(n, {sym(n.children[i])}, static_cast<int>(i));
        }
        break;
      case NodeKind::Production:
        add(n, {sym(n.children.front())});
        break;
      case NodeKind::Sequence: {
        std::vector<Sym> rhs;
        for (NodeId c : n.children) rhs.push_back(sym(c));
        add(n, std::move(rhs));
        break;
      }
      case NodeKind::Iteration: {
        Sym body = sym(n.children.front());
        if (n.iteration == IterationKind::Plus) {
          add(n, {body});
        } else {
          add(n, {});
        }
        if (n.iteration == IterationKind::Optional) {
          add(n, {body});
        } else {
          add(n, {self, body});
        }
        break;
      }
      case NodeKind::SymbolRef:
        if (n.is_nonterminal_ref()) add(n, {Sym{false, g_.find_rule(n.text)->value}});
        break;
      case NodeKind::Empty:
        add(n, {});
        break;
      case NodeKind::Grammar:
      case NodeKind::Literal:
        break;
    }
  }

  const GrammarTree& g_;
  std::vector<Rule> rules_;
  std::vector<std::vector<std::size_t>> by_lhs_;
  std::vector<bool> nullable_;
};

struct Item {
  std::size_t rule;
  std::size_t dot;
  std::size_t origin;
};

class Earley {
 public:
  Earley(const Cfg& cfg, const std::vector<Token>& tokens)
      : cfg_(cfg), tokens_(tokens), chart_(tokens.size() + 1), seen_(tokens.size() + 1) {}

  void recognize(std::uint32_t start) {
    for (std::size_t r : cfg_.rules_of(start)) add(0, Item{r, 0, 0});
    for (std::size_t i = 0; i < chart_.size(); ++i) {
      for (std::size_t k = 0; k < chart_[i].size(); ++k) {
        Item it = chart_[i][k];
        const Rule& rule = cfg_.rule(it.rule);
        if (it.dot == rule.rhs.size()) {
          complete(rule.lhs, it.origin, i);
          continue;
        }
        const Sym& next = rule.rhs[it.dot];
        if (next.terminal) {
          if (i < tokens_.size() && cfg_.matches(next, tokens_[i])) {
            add(i + 1, Item{it.rule, it.dot + 1, it.origin});
          }
          continue;
        }
        for (std::size_t r : cfg_.rules_of(next.id)) add(i, Item{r, 0, i});
        // Nullable nonterminals are stepped over at prediction time, since
        // their completion at this position may already have happened.
        if (cfg_.nullable(next.id)) add(i, Item{it.rule, it.dot + 1, it.origin});
      }
    }
  }

  bool completed(std::uint32_t nt, std::size_t i, std::size_t j) const {
    return completed_.count(std::tuple{nt, i, j}) != 0;
  }

  const std::vector<Item>& set(std::size_t i) const { return chart_[i]; }
  std::size_t size() const { return chart_.size(); }

 private:
  void complete(std::uint32_t lhs, std::size_t origin, std::size_t i) {
    completed_.insert(std::tuple{lhs, origin, i});
    // chart_[origin] may grow while iterating when origin == i.
    for (std::size_t k = 0; k < chart_[origin].size(); ++k) {
      Item w = chart_[origin][k];
      const Rule& rule = cfg_.rule(w.rule);
      if (w.dot < rule.rhs.size() && !rule.rhs[w.dot].terminal && rule.rhs[w.dot].id == lhs) {
        add(i, Item{w.rule, w.dot + 1, w.origin});
      }
    }
  }

  void add(std::size_t i, Item it) {
    std::uint64_t key = (static_cast<std::uint64_t>(it.rule) << 40) |
                        (static_cast<std::uint64_t>(it.dot) << 24) | it.origin;
    if (seen_[i].insert(key).second) chart_[i].push_back(it);
  }

  const Cfg& cfg_;
  const std::vector<Token>& tokens_;
  std::vector<std::vector<Item>> chart_;
  std::vector<std::unordered_set<std::uint64_t>> seen_;
  std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> completed_;
};

using Key = std::tuple<std::uint32_t, std::size_t, std::size_t>;

struct Part {
  bool terminal = false;
  Key key;  // (node, token, token + 1) for terminals
};

struct Recipe {
  std::size_t rule = 0;
  std::vector<Part> parts;
};

class Extractor {
 public:
  Extractor(const GrammarTree& g, const Cfg& cfg, const Earley& chart,
            const std::vector<Token>& tokens)
      : g_(g), cfg_(cfg), chart_(chart), tokens_(tokens) {}

  const Recipe* build(const Key& key) {
    auto [nt, i, j] = key;
    if (!chart_.completed(nt, i, j)) return nullptr;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second ? &*it->second : nullptr;
    if (!active_.insert(key).second) {
      ++guard_hits_;
      return nullptr;
    }
    std::size_t hits = guard_hits_;
    std::optional<Recipe> result;
    for (std::size_t r : cfg_.rules_of(nt)) {
      std::vector<Part> parts;
      std::set<std::pair<std::size_t, std::size_t>> failed;
      if (split(cfg_.rule(r), 0, i, j, parts, failed)) {
        result = Recipe{r, std::move(parts)};
        break;
      }
    }
    active_.erase(key);
    // A failure caused by the cycle guard is only valid for this call.
    if (!result && guard_hits_ != hits) return nullptr;
    auto& slot = memo_[key];
    slot = std::move(result);
    return slot ? &*slot : nullptr;
  }

  std::vector<ParseNode> materialize(const Key& root) {
    nodes_.clear();
    emit(Part{false, root}, std::nullopt);
    return std::move(nodes_);
  }

 private:
  bool split(const Rule& rule, std::size_t k, std::size_t pos, std::size_t j,
             std::vector<Part>& parts, std::set<std::pair<std::size_t, std::size_t>>& failed) {
    if (k == rule.rhs.size()) return pos == j;
    if (failed.count({k, pos})) return false;
    const Sym& s = rule.rhs[k];
    if (s.terminal) {
      if (pos < j && cfg_.matches(s, tokens_[pos])) {
        parts.push_back(Part{true, Key{s.id, pos, pos + 1}});
        if (split(rule, k + 1, pos + 1, j, parts, failed)) return true;
        parts.pop_back();
      }
    } else {
      for (std::size_t e = j + 1; e-- > pos;) {
        Key key{s.id, pos, e};
        if (!build(key)) continue;
        parts.push_back(Part{false, key});
        if (split(rule, k + 1, e, j, parts, failed)) return true;
        parts.pop_back();
      }
    }
    failed.insert({k, pos});
    return false;
  }

  std::size_t emit(const Part& part, std::optional<std::size_t> parent) {
    auto [id, i, j] = part.key;
    std::size_t index = nodes_.size();
    ParseNode node;
    node.gt = NodeId{id};
    node.parent = parent;
    node.begin = i;
    node.end = j;
    if (part.terminal) {
      node.token = i;
      nodes_.push_back(std::move(node));
      return index;
    }
    const Recipe& recipe = *memo_.at(part.key);
    const Rule& rule = cfg_.rule(recipe.rule);
    const GtNode& gt = g_.node(node.gt);
    if (gt.kind == NodeKind::SymbolDef || gt.kind == NodeKind::Alternative) node.choice = rule.choice;
    nodes_.push_back(std::move(node));

    std::vector<Part> children;
    if (gt.kind == NodeKind::Iteration) {
      // Unroll the left recursion into one child per repetition.
      std::deque<Part> reps;
      const Recipe* cur = &recipe;
      while (cfg_.rule(cur->rule).rhs.size() == 2) {
        reps.push_front(cur->parts[1]);
        cur = &*memo_.at(cur->parts[0].key);
      }
      if (!cur->parts.empty()) reps.push_front(cur->parts[0]);
      children.assign(reps.begin(), reps.end());
    } else {
      children = recipe.parts;
    }
    for (const Part& c : children) {
      std::size_t child = emit(c, index);
      nodes_[index].children.push_back(child);
    }
    return index;
  }

  const GrammarTree& g_;
  const Cfg& cfg_;
  const Earley& chart_;
  const std::vector<Token>& tokens_;
  std::map<Key, std::optional<Recipe>> memo_;
  std::set<Key> active_;
  std::size_t guard_hits_ = 0;
  std::vector<ParseNode> nodes_;
};

std::string token_text(const Token& t) {
  if (t.kind == Token::Kind::Literal) return describe(t);
  return t.name + " " + syntax::quote(t.text);
}

}  // namespace

ParseTree parse_input(const GrammarTree& grammar, std::string_view start, std::vector<Token> tokens) {
  auto def = grammar.find_rule(start);
  if (!def) throw std::invalid_argument("start symbol '" + std::string(start) + "' is not defined");
  Cfg cfg(grammar);
  Earley earley(cfg, tokens);
  earley.recognize(def->value);

  std::size_t n = tokens.size();
  Key root{def->value, 0, n};
  Extractor extractor(grammar, cfg, earley, tokens);
  if (earley.completed(def->value, 0, n) && extractor.build(root)) {
    std::vector<ParseNode> nodes = extractor.materialize(root);
    return ParseTree(std::move(nodes), std::move(tokens));
  }

  std::size_t furthest = 0;
  for (std::size_t i = 0; i < earley.size(); ++i) {
    if (!earley.set(i).empty()) furthest = i;
  }
  std::set<std::string> expected;
  for (const Item& it : earley.set(furthest)) {
    const Rule& rule = cfg.rule(it.rule);
    if (it.dot < rule.rhs.size() && rule.rhs[it.dot].terminal) {
      expected.insert(cfg.describe(rule.rhs[it.dot]));
    }
  }
  std::string found = furthest < n ? token_text(tokens[furthest])
                                   : "end of input";
  std::size_t offset = furthest < n ? tokens[furthest].span.begin : (n ? tokens[n - 1].span.end : 0);
  throw ParseError(furthest, offset, std::move(found), {expected.begin(), expected.end()});
}

}  // namespace gaspect
