// Backtracking pattern matcher. Continuation-passing: every matcher gets a
// continuation that runs the rest of the match and returns true once a
// complete solution has been accepted, which stops the search. Choice points
// are explored in preference order ('..' absorbs the shortest run first,
// production patterns take the earliest productions), so the first solution
// is the canonical one.

#include <algorithm>
#include <functional>

#include "gaspect/pattern.hpp"

namespace gaspect {

namespace {

using Cont = std::function<bool()>;

bool is_any_sequence(const Pattern& p) {
  return p.kind == PatternKind::AnySequence ||
         (p.kind == PatternKind::VarDef && p.children.front().kind == PatternKind::AnySequence);
}

bool is_rest(const Pattern& p) {
  return p.kind == PatternKind::AlternativesRest ||
         (p.kind == PatternKind::VarDef &&
          p.children.front().kind == PatternKind::AlternativesRest);
}

bool is_any_productions(const Pattern& p) {
  return p.kind == PatternKind::AnyProductions ||
         (p.kind == PatternKind::VarDef &&
          p.children.front().kind == PatternKind::AnyProductions);
}

bool is_symbol_pattern(const Pattern& p) {
  return p.kind == PatternKind::AnySymbol || p.kind == PatternKind::NamedSymbol;
}

class Matcher {
 public:
  explicit Matcher(const GrammarTree& g) : g_(g) {}

  bool node(const Pattern& p, NodeId id, const Cont& k) {
    const GtNode& n = g_.node(id);
    switch (p.kind) {
      case PatternKind::Rule:
        return n.kind == NodeKind::SymbolDef && rule(p, id, k);
      case PatternKind::VarDef: {
        const Pattern& inner = p.children.front();
        return node(inner, id, [&] { return bound(p.text, is_symbol_pattern(inner), {id}, k); });
      }
      case PatternKind::VarRef: {
        Var* v = find(p.text);
        if (!v || v->nodes.empty() || !consistent(*v, id)) return false;
        v->nodes.push_back(id);
        bool done = k();
        // `v` may dangle if the continuation grew the stack.
        find(p.text)->nodes.pop_back();
        return done;
      }
      case PatternKind::AnySymbol:
        return n.kind == NodeKind::SymbolRef && k();
      case PatternKind::NamedSymbol:
        return n.kind == NodeKind::SymbolRef && n.text == p.text && k();
      case PatternKind::AnyLex:
        return n.kind == NodeKind::Literal && k();
      case PatternKind::Literal:
        return n.kind == NodeKind::Literal && n.text == p.text && k();
      case PatternKind::Empty:
        return n.kind == NodeKind::Empty && k();
      case PatternKind::AnySequence:
        return n.is_expression() && k();
      case PatternKind::Iteration:
        return n.kind == NodeKind::Iteration && n.iteration == p.iteration &&
               node(p.children.front(), n.children.front(), k);
      case PatternKind::Alternative:
        return n.kind == NodeKind::Alternative && alternative(p, n, k);
      case PatternKind::Sequence: {
        if (!n.is_expression()) return false;
        std::vector<NodeId> elems =
            n.kind == NodeKind::Sequence ? n.children : std::vector<NodeId>{id};
        return list(p.children, 0, elems, 0, k);
      }
      case PatternKind::Production:
        return n.kind == NodeKind::Production && node(p.children.front(), n.children.front(), k);
      case PatternKind::AnyProductions:
        return n.kind == NodeKind::Production && k();
      case PatternKind::AlternativesRest:
        return false;
    }
    return false;
  }

  Bindings snapshot() const {
    Bindings out;
    for (const Var& v : vars_) {
      if (v.nodes.empty()) continue;
      std::vector<NodeId> nodes = v.nodes;
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
      out[v.name] = std::move(nodes);
    }
    return out;
  }

 private:
  struct Var {
    std::string name;
    bool by_symbol = false;
    std::vector<NodeId> nodes;
  };

  Var* find(std::string_view name) {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (it->name == name) return &*it;
    }
    return nullptr;
  }

  bool consistent(const Var& v, NodeId id) const {
    const GtNode& n = g_.node(id);
    const GtNode& first = g_.node(v.nodes.front());
    if (v.by_symbol) {
      return (n.kind == NodeKind::SymbolRef || n.kind == NodeKind::SymbolDef) &&
             n.text == first.text;
    }
    return structurally_equal(g_, id, g_, first.id);
  }

  bool bound(const std::string& name, bool by_symbol, std::vector<NodeId> nodes, const Cont& k) {
    vars_.push_back(Var{name, by_symbol, std::move(nodes)});
    bool done = k();
    vars_.pop_back();
    return done;
  }

  // Matches `items[i..]` against `elems[j..]`.
  bool list(const std::vector<Pattern>& items, std::size_t i, const std::vector<NodeId>& elems,
            std::size_t j, const Cont& k) {
    if (i == items.size()) return j == elems.size() && k();
    std::size_t required = 0;
    for (std::size_t q = i; q < items.size(); ++q) required += is_any_sequence(items[q]) ? 0 : 1;
    if (elems.size() - j < required) return false;

    const Pattern& item = items[i];
    if (is_any_sequence(item)) {
      std::size_t longest = elems.size() - j - required;
      for (std::size_t len = 0; len <= longest; ++len) {
        auto rest = [&] { return list(items, i + 1, elems, j + len, k); };
        bool done;
        if (item.kind == PatternKind::VarDef && len > 0) {
          std::vector<NodeId> run(elems.begin() + static_cast<std::ptrdiff_t>(j),
                                  elems.begin() + static_cast<std::ptrdiff_t>(j + len));
          done = bound(item.text, false, std::move(run), rest);
        } else {
          done = rest();
        }
        if (done) return true;
      }
      return false;
    }
    return node(item, elems[j], [&] { return list(items, i + 1, elems, j + 1, k); });
  }

  bool alternative(const Pattern& p, const GtNode& n, const Cont& k) {
    const auto& members = p.children;
    bool has_rest = !members.empty() && is_rest(members.back());
    std::size_t fixed = members.size() - (has_rest ? 1 : 0);
    if (has_rest ? n.children.size() <= fixed : n.children.size() != fixed) return false;
    return branches(p, n, 0, fixed, k);
  }

  bool branches(const Pattern& p, const GtNode& n, std::size_t i, std::size_t fixed,
                const Cont& k) {
    if (i == fixed) {
      if (fixed < p.children.size() && p.children.back().kind == PatternKind::VarDef) {
        std::vector<NodeId> rest(n.children.begin() + static_cast<std::ptrdiff_t>(fixed),
                                 n.children.end());
        return bound(p.children.back().text, false, std::move(rest), k);
      }
      return k();
    }
    return node(p.children[i], n.children[i], [&] { return branches(p, n, i + 1, fixed, k); });
  }

  bool symbol_def(const Pattern& p, const GtNode& def, const Cont& k) {
    switch (p.kind) {
      case PatternKind::VarDef:
        return symbol_def(p.children.front(), def,
                          [&] { return bound(p.text, true, {def.id}, k); });
      case PatternKind::AnySymbol:
        return k();
      case PatternKind::NamedSymbol:
        return def.text == p.text && k();
      default:
        return false;
    }
  }

  bool rule(const Pattern& p, NodeId id, const Cont& k) {
    const GtNode& def = g_.node(id);
    return symbol_def(p.children.front(), def, [&] { return productions(p, def, k); });
  }

  bool productions(const Pattern& p, const GtNode& def, const Cont& k) {
    std::size_t count = p.children.size() - 1;
    if (count == 0) return k();
    const Pattern& first = p.children[1];
    if (count == 1 && is_any_productions(first)) {
      if (def.children.empty()) return false;
      if (first.kind == PatternKind::VarDef) return bound(first.text, false, def.children, k);
      return k();
    }
    return inject(p, def, 1, 0, k);
  }

  // Order-preserving injection of production patterns into productions.
  bool inject(const Pattern& p, const GtNode& def, std::size_t pi, std::size_t from,
              const Cont& k) {
    if (pi == p.children.size()) return k();
    std::size_t remaining = p.children.size() - pi;
    for (std::size_t q = from; q + remaining <= def.children.size(); ++q) {
      if (node(p.children[pi], def.children[q], [&] { return inject(p, def, pi + 1, q + 1, k); })) {
        return true;
      }
    }
    return false;
  }

  const GrammarTree& g_;
  std::vector<Var> vars_;
};

std::optional<MatchResult> try_node(const Pattern& pattern, const GrammarTree& grammar,
                                    NodeId id) {
  Matcher m(grammar);
  std::optional<MatchResult> result;
  m.node(pattern, id, [&] {
    result = MatchResult{id, m.snapshot()};
    return true;
  });
  return result;
}

}  // namespace

std::optional<MatchResult> match_node(const Pattern& pattern, const GrammarTree& grammar,
                                      NodeId node) {
  return try_node(pattern, grammar, node);
}

std::vector<MatchResult> match_rules(const Pattern& pattern, const GrammarTree& grammar) {
  std::vector<MatchResult> out;
  if (pattern.kind != PatternKind::Rule) return out;
  for (NodeId def : grammar.rules()) {
    if (auto r = try_node(pattern, grammar, def)) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<MatchResult> match_within(const Pattern& pattern, const GrammarTree& grammar,
                                      NodeId scope) {
  std::vector<MatchResult> out;
  for (NodeId id : descendants(grammar, scope)) {
    if (auto r = try_node(pattern, grammar, id)) out.push_back(std::move(*r));
  }
  std::sort(out.begin(), out.end(),
            [](const MatchResult& a, const MatchResult& b) { return a.matched_node < b.matched_node; });
  return out;
}

}  // namespace gaspect
