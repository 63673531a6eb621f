#include "gaspect/aspect.hpp"

#include <algorithm>

#include "annotation_parser.hpp"
#include "pattern_parser.hpp"
#include "syntax.hpp"

namespace gaspect {

std::string to_string(const Multiplicity& m) {
  return "[" + std::to_string(m.min) + ".." + (m.max ? std::to_string(*m.max) : "*") + "]";
}

bool check_multiplicity(std::size_t count, const Multiplicity& m) {
  return m.min <= count && (!m.max || count <= *m.max);
}

std::string WeaveError::message() const {
  std::string out = aspect + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                    ": pattern '" + pattern_text + "' matched " + std::to_string(actual) +
                    ", expected " + to_string(expected);
  if (scope) {
    out += " (within bytes " + std::to_string(scope->begin) + "-" + std::to_string(scope->end) + ")";
  }
  return out;
}

namespace {

using syntax::Tok;

class AspectParser {
 public:
  AspectParser(std::string_view text, std::string name) : cur_(text, std::move(name)) {}

  Aspect parse() {
    Aspect aspect;
    aspect.source_name = cur_.source_name();
    if (cur_.peek().is('{') || cur_.peek().is('.')) {
      aspect.grammar_annotation = detail::parse_annotation(cur_);
    }
    while (!cur_.at_end()) aspect.rules.push_back(rule());
    return aspect;
  }

 private:
  using Scopes = std::vector<std::vector<std::string>>;

  SourceLoc loc_of(const syntax::Token& t) const { return locate(cur_.text(), t.begin); }

  std::optional<std::size_t> bound() {
    const auto& t = cur_.next();
    if (t.is('*')) return std::nullopt;
    if (t.kind != Tok::Int) cur_.fail(t, "expected an integer or '*' in multiplicity");
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::out_of_range&) {
      cur_.fail(t, "multiplicity bound out of range");
    }
  }

  Multiplicity multiplicity() {
    if (!cur_.peek().is('[')) return Multiplicity::one_or_more();
    const auto& open = cur_.next();
    std::optional<std::size_t> lo = bound();
    Multiplicity m;
    if (cur_.peek().kind == Tok::DotDot) {
      cur_.next();
      if (!lo) cur_.fail(open, "the lower bound of a multiplicity must be an integer");
      m = Multiplicity{*lo, bound()};
    } else {
      // [n] means exactly n, [*] means any number.
      m = lo ? Multiplicity{*lo, *lo} : Multiplicity{0, std::nullopt};
    }
    cur_.expect(']', "']'");
    if (m.max && *m.max < m.min) cur_.fail(open, "multiplicity upper bound is below its lower bound");
    return m;
  }

  AnnotationRule rule() {
    AnnotationRule r;
    r.loc = loc_of(cur_.peek());
    r.multiplicity = multiplicity();
    std::size_t begin = cur_.peek().begin;
    r.pattern = detail::parse_rule_pattern(cur_);
    detail::check_variables(r.pattern, cur_);
    r.pattern_text = std::string(cur_.slice(begin, r.pattern.span.end));
    Scopes scopes{defined_variables(r.pattern)};
    r.subrules = subrules(scopes);
    if (!cur_.accept(';') && r.subrules.empty() && !cur_.at_end()) {
      cur_.fail(cur_.peek(), "expected ';', '@' or a variable annotation after pattern, found " +
                                 syntax::describe(cur_.peek()));
    }
    return r;
  }

  std::vector<Subrule> subrules(Scopes& scopes) {
    std::vector<Subrule> out;
    for (;;) {
      if (cur_.peek().is('@')) {
        out.push_back(Subrule{subpattern(scopes)});
      } else if (detail::at_variable_annotation(cur_)) {
        out.push_back(Subrule{variable_annotation(scopes)});
      } else {
        return out;
      }
    }
  }

  Subpattern subpattern(Scopes& scopes) {
    Subpattern s;
    s.loc = loc_of(cur_.next());
    s.multiplicity = multiplicity();
    std::size_t begin = cur_.peek().begin;
    s.pattern = detail::parse_subpattern(cur_);
    detail::check_variables(s.pattern, cur_);
    s.pattern_text = std::string(cur_.slice(begin, s.pattern.span.end));
    cur_.expect(':', "':' after subpattern");
    if (cur_.peek().is('{') || cur_.peek().is('.')) {
      s.annotation = detail::parse_annotation(cur_);
      cur_.expect(';', "';' after annotation");
      return s;
    }
    scopes.push_back(defined_variables(s.pattern));
    s.subrules = subrules(scopes);
    scopes.pop_back();
    if (s.subrules.empty() && !cur_.peek().is(';')) {
      cur_.fail(cur_.peek(), "expected an annotation or subrules, found " +
                                 syntax::describe(cur_.peek()));
    }
    cur_.accept(';');
    return s;
  }

  VariableAnnotation variable_annotation(const Scopes& scopes) {
    VariableAnnotation v;
    const auto& dollar = cur_.next();
    v.loc = loc_of(dollar);
    v.variable = cur_.next().text;
    bool known = std::any_of(scopes.begin(), scopes.end(), [&](const auto& vars) {
      return std::find(vars.begin(), vars.end(), v.variable) != vars.end();
    });
    if (!known) cur_.fail(dollar, "annotation refers to undefined variable $" + v.variable);
    v.annotation = detail::parse_annotation(cur_);
    cur_.expect(';', "';' after variable annotation");
    return v;
  }

  syntax::Cursor cur_;
};

// Attributes collected for one annotation rule before they reach the store.
using Pending = std::map<NodeId, std::map<AttributeKey, Attribute>>;

class Weaver {
 public:
  Weaver(const GrammarTree& g, WeaveResult& result) : g_(g), result_(result) {}

  void aspect(const Aspect& a) {
    if (a.grammar_annotation) {
      commit_one(g_.root().id, *a.grammar_annotation, Provenance{a.source_name, -1});
    }
    for (std::size_t i = 0; i < a.rules.size(); ++i) rule(a, static_cast<int>(i));
  }

 private:
  using Scopes = std::vector<const Bindings*>;

  void rule(const Aspect& a, int index) {
    const AnnotationRule& r = a.rules[static_cast<std::size_t>(index)];
    std::vector<MatchResult> matches = match_rules(r.pattern, g_);
    if (!check_multiplicity(matches.size(), r.multiplicity)) {
      report(a, index, r.pattern_text, r.loc, r.multiplicity, matches, std::nullopt);
      return;
    }
    Pending pending;
    for (const auto& m : matches) {
      Scopes scopes{&m.bindings};
      apply(a, index, r.subrules, m.matched_node, scopes, pending);
    }
    Provenance prov{a.source_name, index};
    for (const auto& [node, attrs] : pending) {
      for (const auto& [key, attr] : attrs) {
        try {
          result_.store.attach(node, attr, prov);
        } catch (const ConflictError& e) {
          result_.conflicts.push_back(e);
        }
      }
    }
  }

  void apply(const Aspect& a, int index, const std::vector<Subrule>& subrules, NodeId node,
             Scopes& scopes, Pending& pending) {
    for (const Subrule& sr : subrules) {
      if (const auto* sp = std::get_if<Subpattern>(&sr.item)) {
        std::vector<MatchResult> subs = match_within(sp->pattern, g_, node);
        if (!check_multiplicity(subs.size(), sp->multiplicity)) {
          report(a, index, sp->pattern_text, sp->loc, sp->multiplicity, subs, g_.node(node).span);
          continue;
        }
        for (const auto& sm : subs) {
          if (sp->annotation) {
            add(pending, sm.matched_node, *sp->annotation);
            continue;
          }
          scopes.push_back(&sm.bindings);
          apply(a, index, sp->subrules, sm.matched_node, scopes, pending);
          scopes.pop_back();
        }
        continue;
      }
      const auto& va = std::get<VariableAnnotation>(sr.item);
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        auto b = (*it)->find(va.variable);
        if (b == (*it)->end()) continue;
        for (NodeId bound : b->second) add(pending, bound, va.annotation);
        break;
      }
    }
  }

  static void add(Pending& pending, NodeId node, const Annotation& annotation) {
    auto& attrs = pending[node];
    for (const auto& attr : annotation.attributes) {
      attrs.insert_or_assign(AttributeKey{attr.ns, attr.name}, attr);
    }
  }

  void commit_one(NodeId node, const Annotation& annotation, const Provenance& prov) {
    for (const auto& attr : annotation.attributes) {
      try {
        result_.store.attach(node, attr, prov);
      } catch (const ConflictError& e) {
        result_.conflicts.push_back(e);
      }
    }
  }

  void report(const Aspect& a, int index, const std::string& text, SourceLoc loc,
              const Multiplicity& expected, const std::vector<MatchResult>& matches,
              std::optional<ByteSpan> scope) {
    WeaveError e;
    e.aspect = a.source_name;
    e.rule = index;
    e.pattern_text = text;
    e.loc = loc;
    e.expected = expected;
    e.actual = matches.size();
    for (const auto& m : matches) e.matched_spans.push_back(g_.node(m.matched_node).span);
    e.scope = scope;
    result_.errors.push_back(std::move(e));
  }

  const GrammarTree& g_;
  WeaveResult& result_;
};

}  // namespace

Aspect parse_aspect(std::string_view text, std::string source_name) {
  return AspectParser(text, std::move(source_name)).parse();
}

WeaveResult weave(const GrammarTree& grammar, const std::vector<Aspect>& aspects) {
  WeaveResult result{AnnotationStore::for_grammar(grammar), {}, {}};
  Weaver weaver(grammar, result);
  for (const Aspect& a : aspects) weaver.aspect(a);
  return result;
}

}  // namespace gaspect
