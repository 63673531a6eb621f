#include "pattern_parser.hpp"

#include <set>

namespace gaspect {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Rule: return "Rule";
    case PatternKind::AnySymbol: return "AnySymbol";
    case PatternKind::NamedSymbol: return "NamedSymbol";
    case PatternKind::Production: return "Production";
    case PatternKind::AnyProductions: return "AnyProductions";
    case PatternKind::Alternative: return "Alternative";
    case PatternKind::Sequence: return "Sequence";
    case PatternKind::Iteration: return "Iteration";
    case PatternKind::AnySequence: return "AnySequence";
    case PatternKind::AlternativesRest: return "AlternativesRest";
    case PatternKind::AnyLex: return "AnyLex";
    case PatternKind::Empty: return "Empty";
    case PatternKind::Literal: return "Literal";
    case PatternKind::VarDef: return "VarDef";
    case PatternKind::VarRef: return "VarRef";
  }
  return "?";
}

bool operator==(const Pattern& a, const Pattern& b) {
  return a.kind == b.kind && a.text == b.text && a.iteration == b.iteration &&
         a.children == b.children;
}

std::vector<std::string> defined_variables(const Pattern& pattern) {
  std::vector<std::string> out;
  auto walk = [&out](auto& self, const Pattern& p) -> void {
    if (p.kind == PatternKind::VarDef) out.push_back(p.text);
    for (const auto& c : p.children) self(self, c);
  };
  walk(walk, pattern);
  return out;
}

namespace detail {

using syntax::Tok;

namespace {

Pattern leaf(PatternKind kind, const syntax::Token& t, std::string text = {}) {
  Pattern p;
  p.kind = kind;
  p.text = std::move(text);
  p.span = {t.begin, t.end};
  return p;
}

Pattern wrap_var(std::string name, std::size_t begin, Pattern inner) {
  Pattern v;
  v.kind = PatternKind::VarDef;
  v.text = std::move(name);
  v.span = {begin, inner.span.end};
  v.children.push_back(std::move(inner));
  return v;
}

// `$ NAME =`
bool at_var_def(const syntax::Cursor& cur, std::size_t ahead = 0) {
  return cur.peek(ahead).is('$') && cur.peek(ahead + 1).kind == Tok::Name &&
         cur.peek(ahead + 2).is('=');
}

bool starts_iteration(const syntax::Cursor& cur) {
  const auto& t = cur.peek();
  switch (t.kind) {
    case Tok::Name:
    case Tok::String:
    case Tok::HashEmpty:
    case Tok::HashLex:
    case Tok::DotDot:
      return true;
    case Tok::Punct:
      if (t.is('(') || t.is('#')) return true;
      if (t.is('$')) return cur.peek(1).kind == Tok::Name && !at_variable_annotation(cur);
      return false;
    default:
      return false;
  }
}

class Parser {
 public:
  explicit Parser(syntax::Cursor& cur) : cur_(cur) {}

  Pattern rule() {
    std::size_t begin = cur_.peek().begin;
    Pattern r;
    r.kind = PatternKind::Rule;
    std::optional<std::string> var = maybe_var();
    const auto& t = cur_.next();
    Pattern sym;
    if (t.is('#')) {
      sym = leaf(PatternKind::AnySymbol, t);
    } else if (t.kind == Tok::Name) {
      sym = leaf(PatternKind::NamedSymbol, t, t.text);
    } else {
      cur_.fail(t, "expected '#' or a symbol name, found " + syntax::describe(t));
    }
    if (var) sym = wrap_var(*var, begin, std::move(sym));
    r.children.push_back(std::move(sym));
    while (at_production()) {
      const auto& start = cur_.peek();
      Pattern prod = production();
      if (prod_is_wildcard(prod) && r.children.size() > 1) {
        cur_.fail(start, "'{...}' must be the only production pattern of a rule pattern");
      }
      if (r.children.size() > 1 && prod_is_wildcard(r.children[1])) {
        cur_.fail(start, "'{...}' must be the only production pattern of a rule pattern");
      }
      r.children.push_back(std::move(prod));
    }
    r.span = {begin, r.children.back().span.end};
    return r;
  }

  Pattern sub() {
    if (at_production()) return production();
    return alternative();
  }

 private:
  static bool prod_is_wildcard(const Pattern& p) {
    const Pattern& q = p.kind == PatternKind::VarDef ? p.children.front() : p;
    return q.kind == PatternKind::AnyProductions;
  }

  bool at_production() const {
    return cur_.peek().is(':') || (at_var_def(cur_) && cur_.peek(3).is(':'));
  }

  std::optional<std::string> maybe_var() {
    if (!at_var_def(cur_)) return std::nullopt;
    cur_.next();
    std::string name = cur_.next().text;
    cur_.next();
    return name;
  }

  Pattern production() {
    std::size_t begin = cur_.peek().begin;
    std::optional<std::string> outer = maybe_var();
    const auto& colon = cur_.expect(':', "':'");
    if (!outer) {
      std::size_t inner_begin = cur_.peek().begin;
      std::optional<std::string> inner;
      if (at_var_def(cur_) && cur_.peek(3).kind == Tok::AnyProductions) inner = maybe_var();
      if (cur_.peek().kind == Tok::AnyProductions) {
        Pattern w = leaf(PatternKind::AnyProductions, cur_.next());
        if (inner) w = wrap_var(*inner, inner_begin, std::move(w));
        w.span.begin = inner ? inner_begin : w.span.begin;
        return w;
      }
    } else if (cur_.peek().kind == Tok::AnyProductions) {
      cur_.fail(cur_.peek(), "a '{...}' variable is written ': $v={...}'");
    }
    Pattern p;
    p.kind = PatternKind::Production;
    Pattern body = alternative();
    p.span = {colon.begin, body.span.end};
    p.children.push_back(std::move(body));
    if (outer) return wrap_var(*outer, begin, std::move(p));
    return p;
  }

  Pattern alternative() {
    std::vector<Pattern> members;
    members.push_back(sequence());
    bool rest = false;
    while (cur_.peek().is('|')) {
      const auto& bar = cur_.next();
      if (rest) cur_.fail(bar, "'...' must be the last member of an alternative pattern");
      std::size_t begin = cur_.peek().begin;
      bool var_rest = at_var_def(cur_) && cur_.peek(3).kind == Tok::Ellipsis;
      if (cur_.peek().kind == Tok::Ellipsis || var_rest) {
        std::optional<std::string> var = maybe_var();
        Pattern r = leaf(PatternKind::AlternativesRest, cur_.next());
        if (var) r = wrap_var(*var, begin, std::move(r));
        members.push_back(std::move(r));
        rest = true;
      } else {
        members.push_back(sequence());
      }
    }
    if (members.size() == 1) return std::move(members.front());
    Pattern alt;
    alt.kind = PatternKind::Alternative;
    alt.span = {members.front().span.begin, members.back().span.end};
    alt.children = std::move(members);
    return alt;
  }

  Pattern sequence() {
    if (!starts_iteration(cur_)) {
      if (cur_.peek().kind == Tok::Ellipsis) {
        cur_.fail(cur_.peek(), "'...' is only allowed as a member of an alternative pattern");
      }
      cur_.fail(cur_.peek(), "expected a pattern, found " + syntax::describe(cur_.peek()));
    }
    std::vector<Pattern> items;
    while (starts_iteration(cur_)) items.push_back(iteration());
    if (cur_.peek().kind == Tok::Ellipsis) {
      cur_.fail(cur_.peek(), "'...' is only allowed as a member of an alternative pattern");
    }
    if (items.size() == 1) return std::move(items.front());
    Pattern seq;
    seq.kind = PatternKind::Sequence;
    seq.span = {items.front().span.begin, items.back().span.end};
    seq.children = std::move(items);
    return seq;
  }

  Pattern iteration() {
    std::size_t begin = cur_.peek().begin;
    std::optional<std::string> var = maybe_var();
    Pattern inner = atom();
    const auto& t = cur_.peek();
    std::optional<IterationKind> kind;
    if (t.is('*')) kind = IterationKind::Star;
    if (t.is('+')) kind = IterationKind::Plus;
    if (t.is('?')) kind = IterationKind::Optional;
    if (kind) {
      const auto& suffix = cur_.next();
      Pattern it;
      it.kind = PatternKind::Iteration;
      it.iteration = *kind;
      it.span = {inner.span.begin, suffix.end};
      it.children.push_back(std::move(inner));
      inner = std::move(it);
    }
    if (var) return wrap_var(*var, begin, std::move(inner));
    return inner;
  }

  Pattern atom() {
    const auto& t = cur_.next();
    switch (t.kind) {
      case Tok::Name: return leaf(PatternKind::NamedSymbol, t, t.text);
      case Tok::String:
        if (t.text.empty()) cur_.fail(t, "empty literal pattern");
        return leaf(PatternKind::Literal, t, t.text);
      case Tok::HashEmpty: return leaf(PatternKind::Empty, t);
      case Tok::HashLex: return leaf(PatternKind::AnyLex, t);
      case Tok::DotDot: return leaf(PatternKind::AnySequence, t);
      default: break;
    }
    if (t.is('#')) return leaf(PatternKind::AnySymbol, t);
    if (t.is('$')) {
      const auto& name = cur_.expect(Tok::Name, "variable name");
      Pattern r = leaf(PatternKind::VarRef, t, name.text);
      r.span.end = name.end;
      return r;
    }
    // '(' alternative ')' is grouping only
    Pattern inner = alternative();
    cur_.expect(')', "')'");
    return inner;
  }

  syntax::Cursor& cur_;
};

}  // namespace

bool at_variable_annotation(const syntax::Cursor& cur, std::size_t ahead) {
  return cur.peek(ahead).is('$') && cur.peek(ahead + 1).kind == Tok::Name &&
         (cur.peek(ahead + 2).is('.') || cur.peek(ahead + 2).is('{'));
}

Pattern parse_rule_pattern(syntax::Cursor& cur) { return Parser(cur).rule(); }

Pattern parse_subpattern(syntax::Cursor& cur) { return Parser(cur).sub(); }

void check_variables(const Pattern& pattern, const syntax::Cursor& cur) {
  std::set<std::string, std::less<>> defined;
  auto walk = [&](auto& self, const Pattern& p) -> void {
    if (p.kind == PatternKind::VarDef) {
      // The inner pattern is matched before the variable is bound.
      for (const auto& c : p.children) self(self, c);
      if (!defined.insert(p.text).second) {
        cur.fail_at(p.span.begin, "variable $" + p.text + " is defined twice");
      }
      return;
    }
    if (p.kind == PatternKind::VarRef && !defined.contains(p.text)) {
      cur.fail_at(p.span.begin, "variable $" + p.text + " is used before it is defined");
    }
    for (const auto& c : p.children) self(self, c);
  };
  walk(walk, pattern);
}

}  // namespace detail

namespace {

template <typename Parse>
Pattern parse_standalone(std::string_view text, std::string source_name, Parse parse) {
  syntax::Cursor cur(text, std::move(source_name));
  Pattern p = parse(cur);
  cur.accept(';');
  if (!cur.at_end()) {
    cur.fail(cur.peek(), "unexpected " + syntax::describe(cur.peek()) + " after pattern");
  }
  detail::check_variables(p, cur);
  return p;
}

}  // namespace

Pattern parse_rule_pattern(std::string_view text, std::string source_name) {
  return parse_standalone(text, std::move(source_name),
                          [](syntax::Cursor& c) { return detail::parse_rule_pattern(c); });
}

Pattern parse_subpattern(std::string_view text, std::string source_name) {
  return parse_standalone(text, std::move(source_name),
                          [](syntax::Cursor& c) { return detail::parse_subpattern(c); });
}

}  // namespace gaspect
