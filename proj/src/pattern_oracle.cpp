// Exhaustive reference matcher. Shares no code with pattern_match.cpp: each
// function returns the full list of environments that satisfy the pattern,
// with no pruning and no early exit.

#include <algorithm>
#include <set>

#include "gaspect/pattern.hpp"

namespace gaspect {

namespace {

struct Entry {
  std::string name;
  bool by_symbol = false;
  std::vector<NodeId> nodes;
};

using Env = std::vector<Entry>;
using Envs = std::vector<Env>;

class Oracle {
 public:
  explicit Oracle(const GrammarTree& g) : g_(g) {}

  Envs all(const Pattern& p, NodeId id, const Env& env) const {
    const GtNode& n = g_.node(id);
    auto when = [&](bool ok) { return ok ? Envs{env} : Envs{}; };
    switch (p.kind) {
      case PatternKind::Rule:
        return n.kind == NodeKind::SymbolDef ? rule(p, n, env) : Envs{};
      case PatternKind::VarDef: {
        const Pattern& inner = p.children.front();
        bool by_symbol =
            inner.kind == PatternKind::AnySymbol || inner.kind == PatternKind::NamedSymbol;
        Envs out;
        for (Env e : all(inner, id, env)) {
          e.push_back(Entry{p.text, by_symbol, {id}});
          out.push_back(std::move(e));
        }
        return out;
      }
      case PatternKind::VarRef: {
        Env e = env;
        for (auto it = e.rbegin(); it != e.rend(); ++it) {
          if (it->name != p.text) continue;
          if (it->nodes.empty() || !same(*it, id)) return {};
          it->nodes.push_back(id);
          return {e};
        }
        return {};
      }
      case PatternKind::AnySymbol: return when(n.kind == NodeKind::SymbolRef);
      case PatternKind::NamedSymbol:
        return when(n.kind == NodeKind::SymbolRef && n.text == p.text);
      case PatternKind::AnyLex: return when(n.kind == NodeKind::Literal);
      case PatternKind::Literal: return when(n.kind == NodeKind::Literal && n.text == p.text);
      case PatternKind::Empty: return when(n.kind == NodeKind::Empty);
      case PatternKind::AnySequence: return when(expression(n));
      case PatternKind::AnyProductions: return when(n.kind == NodeKind::Production);
      case PatternKind::AlternativesRest: return {};
      case PatternKind::Iteration:
        if (n.kind != NodeKind::Iteration || n.iteration != p.iteration) return {};
        return all(p.children.front(), n.children.front(), env);
      case PatternKind::Production:
        if (n.kind != NodeKind::Production) return {};
        return all(p.children.front(), n.children.front(), env);
      case PatternKind::Alternative:
        return n.kind == NodeKind::Alternative ? alternative(p, n, env) : Envs{};
      case PatternKind::Sequence: {
        if (!expression(n)) return {};
        std::vector<NodeId> elems =
            n.kind == NodeKind::Sequence ? n.children : std::vector<NodeId>{id};
        return sequence(p.children, 0, elems, 0, env);
      }
    }
    return {};
  }

 private:
  static bool expression(const GtNode& n) {
    return n.kind != NodeKind::Grammar && n.kind != NodeKind::SymbolDef &&
           n.kind != NodeKind::Production;
  }

  static const Pattern& unwrap(const Pattern& p) {
    return p.kind == PatternKind::VarDef ? p.children.front() : p;
  }

  bool equal(NodeId a, NodeId b) const {
    const GtNode& x = g_.node(a);
    const GtNode& y = g_.node(b);
    if (x.kind != y.kind || x.text != y.text || x.children.size() != y.children.size()) {
      return false;
    }
    if (x.kind == NodeKind::Iteration && x.iteration != y.iteration) return false;
    for (std::size_t i = 0; i < x.children.size(); ++i) {
      if (!equal(x.children[i], y.children[i])) return false;
    }
    return true;
  }

  bool same(const Entry& e, NodeId id) const {
    if (!e.by_symbol) return equal(e.nodes.front(), id);
    const GtNode& n = g_.node(id);
    bool named = n.kind == NodeKind::SymbolRef || n.kind == NodeKind::SymbolDef;
    return named && n.text == g_.node(e.nodes.front()).text;
  }

  Envs sequence(const std::vector<Pattern>& items, std::size_t i,
                const std::vector<NodeId>& elems, std::size_t j, const Env& env) const {
    if (i == items.size()) return j == elems.size() ? Envs{env} : Envs{};
    const Pattern& item = items[i];
    Envs out;
    if (unwrap(item).kind == PatternKind::AnySequence) {
      for (std::size_t len = 0; j + len <= elems.size(); ++len) {
        Env e = env;
        if (item.kind == PatternKind::VarDef && len > 0) {
          e.push_back(Entry{item.text, false,
                            std::vector<NodeId>(elems.begin() + static_cast<std::ptrdiff_t>(j),
                                                elems.begin() + static_cast<std::ptrdiff_t>(j + len))});
        }
        for (Env& r : sequence(items, i + 1, elems, j + len, e)) out.push_back(std::move(r));
      }
      return out;
    }
    if (j >= elems.size()) return {};
    for (const Env& e : all(item, elems[j], env)) {
      for (Env& r : sequence(items, i + 1, elems, j + 1, e)) out.push_back(std::move(r));
    }
    return out;
  }

  Envs alternative(const Pattern& p, const GtNode& n, const Env& env) const {
    bool has_rest = unwrap(p.children.back()).kind == PatternKind::AlternativesRest;
    std::size_t fixed = p.children.size() - (has_rest ? 1 : 0);
    if (has_rest && n.children.size() < fixed + 1) return {};
    if (!has_rest && n.children.size() != fixed) return {};
    Envs cur{env};
    for (std::size_t i = 0; i < fixed; ++i) {
      Envs next;
      for (const Env& e : cur) {
        for (Env& r : all(p.children[i], n.children[i], e)) next.push_back(std::move(r));
      }
      cur = std::move(next);
    }
    if (has_rest && p.children.back().kind == PatternKind::VarDef) {
      for (Env& e : cur) {
        e.push_back(Entry{p.children.back().text, false,
                          std::vector<NodeId>(n.children.begin() + static_cast<std::ptrdiff_t>(fixed),
                                              n.children.end())});
      }
    }
    return cur;
  }

  Envs symbol(const Pattern& p, const GtNode& def, const Env& env) const {
    switch (p.kind) {
      case PatternKind::VarDef: {
        Envs out;
        for (Env e : symbol(p.children.front(), def, env)) {
          e.push_back(Entry{p.text, true, {def.id}});
          out.push_back(std::move(e));
        }
        return out;
      }
      case PatternKind::AnySymbol: return {env};
      case PatternKind::NamedSymbol: return def.text == p.text ? Envs{env} : Envs{};
      default: return {};
    }
  }

  // Every strictly increasing k-tuple of indices below n.
  static std::vector<std::vector<std::size_t>> tuples(std::size_t k, std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto gen = [&](auto& self, std::size_t from) -> void {
      if (cur.size() == k) {
        out.push_back(cur);
        return;
      }
      for (std::size_t q = from; q < n; ++q) {
        cur.push_back(q);
        self(self, q + 1);
        cur.pop_back();
      }
    };
    gen(gen, 0);
    return out;
  }

  Envs rule(const Pattern& p, const GtNode& def, const Env& env) const {
    Envs heads = symbol(p.children.front(), def, env);
    std::size_t k = p.children.size() - 1;
    if (k == 0) return heads;
    const Pattern& first = p.children[1];
    if (k == 1 && unwrap(first).kind == PatternKind::AnyProductions) {
      if (def.children.empty()) return {};
      if (first.kind == PatternKind::VarDef) {
        for (Env& e : heads) e.push_back(Entry{first.text, false, def.children});
      }
      return heads;
    }
    Envs out;
    for (const auto& idx : tuples(k, def.children.size())) {
      Envs cur = heads;
      for (std::size_t i = 0; i < k; ++i) {
        Envs next;
        for (const Env& e : cur) {
          for (Env& r : all(p.children[i + 1], def.children[idx[i]], e)) next.push_back(std::move(r));
        }
        cur = std::move(next);
      }
      for (Env& e : cur) out.push_back(std::move(e));
    }
    return out;
  }

  const GrammarTree& g_;
};

Bindings to_bindings(const Env& env) {
  Bindings b;
  for (const Entry& e : env) {
    if (e.nodes.empty()) continue;
    std::vector<NodeId> nodes = e.nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    b[e.name] = std::move(nodes);
  }
  return b;
}

std::vector<MatchResult> collect(const Pattern& pattern, const GrammarTree& grammar,
                                 const std::vector<NodeId>& candidates) {
  Oracle oracle(grammar);
  std::set<std::pair<NodeId, Bindings>> seen;
  for (NodeId id : candidates) {
    for (const Env& e : oracle.all(pattern, id, {})) seen.emplace(id, to_bindings(e));
  }
  std::vector<MatchResult> out;
  for (auto& [id, b] : seen) out.push_back(MatchResult{id, b});
  return out;
}

}  // namespace

std::vector<MatchResult> brute_force_match(const Pattern& pattern, const GrammarTree& grammar) {
  if (pattern.kind == PatternKind::Rule) {
    std::vector<NodeId> defs;
    for (const GtNode& n : grammar.nodes()) {
      if (n.kind == NodeKind::SymbolDef) defs.push_back(n.id);
    }
    return collect(pattern, grammar, defs);
  }
  return brute_force_match(pattern, grammar, grammar.root().id);
}

std::vector<MatchResult> brute_force_match(const Pattern& pattern, const GrammarTree& grammar,
                                           NodeId scope) {
  std::vector<NodeId> below;
  std::vector<NodeId> stack{scope};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (cur != scope) below.push_back(cur);
    for (NodeId c : grammar.node(cur).children) stack.push_back(c);
  }
  return collect(pattern, grammar, below);
}

}  // namespace gaspect
