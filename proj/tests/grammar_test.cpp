#include "gaspect/grammar.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_util.hpp"

namespace gaspect {
namespace {

using testing::read_fixture;

const char* const kGrammarFixtures[] = {"arith.grammar", "java5.grammar", "java14.grammar",
                                        "misc.grammar"};

// Independent recursive traversal used to check descendants().
void collect_preorder(const GrammarTree& g, NodeId id, std::vector<NodeId>& out) {
  for (NodeId c : g.node(id).children) {
    out.push_back(c);
    collect_preorder(g, c, out);
  }
}

TEST(ParseGrammar, ArithmeticListing) {
  GrammarTree g = parse_grammar(read_fixture("arith.grammar"));
  ASSERT_EQ(g.rules().size(), 3u);
  EXPECT_EQ(g.node(g.rules()[0]).text, "expr");
  EXPECT_EQ(g.node(g.rules()[1]).text, "term");
  EXPECT_EQ(g.node(g.rules()[2]).text, "factor");

  const GtNode& expr = g.node(*g.find_rule("expr"));
  ASSERT_EQ(expr.children.size(), 1u);
  const GtNode& prod = g.node(expr.children[0]);
  EXPECT_EQ(prod.kind, NodeKind::Production);
  const GtNode& seq = g.node(prod.children[0]);
  ASSERT_EQ(seq.kind, NodeKind::Sequence);
  ASSERT_EQ(seq.children.size(), 2u);
  EXPECT_EQ(g.node(seq.children[0]).kind, NodeKind::SymbolRef);
  EXPECT_EQ(g.node(seq.children[0]).text, "term");
  const GtNode& it = g.node(seq.children[1]);
  EXPECT_EQ(it.kind, NodeKind::Iteration);
  EXPECT_EQ(it.iteration, IterationKind::Star);
}

TEST(ParseGrammar, SmallestRule) {
  GrammarTree g = parse_grammar("a : #empty ;");
  ASSERT_EQ(g.rules().size(), 1u);
  const GtNode& def = g.node(g.rules()[0]);
  ASSERT_EQ(def.children.size(), 1u);
  const GtNode& prod = g.node(def.children[0]);
  ASSERT_EQ(prod.children.size(), 1u);
  EXPECT_EQ(g.node(prod.children[0]).kind, NodeKind::Empty);
}

TEST(ParseGrammar, MissingSemicolonFailsAtEnd) {
  try {
    parse_grammar("x : y");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.loc().offset, 5u);
    EXPECT_EQ(e.loc().line, 1u);
    EXPECT_EQ(e.loc().column, 6u);
    EXPECT_NE(e.message().find("end of input"), std::string::npos);
  }
}

TEST(ParseGrammar, ReportsLineAndColumn) {
  try {
    parse_grammar("a : B ;\nb : C | ;\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.loc().line, 2u);
    EXPECT_EQ(e.loc().column, 9u);
  }
}

TEST(ParseGrammar, DanglingNonterminal) {
  EXPECT_THROW(parse_grammar("a : b ;"), SyntaxError);
  // Terminals need no definition.
  EXPECT_NO_THROW(parse_grammar("a : B ;"));
}

TEST(ParseGrammar, DuplicateDefinition) {
  EXPECT_THROW(parse_grammar("a : B ; a : C ;"), SyntaxError);
}

TEST(ParseGrammar, LiteralsAndEscapes) {
  GrammarTree g = parse_grammar("a : '\\n' 'it\\'s' ;");
  const GtNode& seq = g.node(g.node(g.node(g.rules()[0]).children[0]).children[0]);
  EXPECT_EQ(g.node(seq.children[0]).text, "\n");
  EXPECT_EQ(g.node(seq.children[1]).text, "it's");
  EXPECT_THROW(parse_grammar("a : '\\q' ;"), SyntaxError);
  EXPECT_THROW(parse_grammar("a : '' ;"), SyntaxError);
}

TEST(ParseGrammar, GroupsAreNormalized) {
  GrammarTree g = parse_grammar("a : ((B)) ; b : (B | C) ; c : (B C) ;");
  auto body = [&](std::string_view name) {
    return g.node(g.node(g.node(*g.find_rule(name)).children[0]).children[0]);
  };
  EXPECT_EQ(body("a").kind, NodeKind::SymbolRef);
  EXPECT_EQ(body("b").kind, NodeKind::Alternative);
  EXPECT_EQ(body("c").kind, NodeKind::Sequence);
}

TEST(ParseGrammar, InvariantsHoldOnFixtures) {
  for (const char* name : kGrammarFixtures) {
    GrammarTree g = parse_grammar(read_fixture(name), name);
    for (const GtNode& n : g.nodes()) {
      switch (n.kind) {
        case NodeKind::Grammar:
          for (NodeId c : n.children) EXPECT_EQ(g.node(c).kind, NodeKind::SymbolDef);
          break;
        case NodeKind::SymbolDef:
          EXPECT_GE(n.children.size(), 1u);
          for (NodeId c : n.children) EXPECT_EQ(g.node(c).kind, NodeKind::Production);
          break;
        case NodeKind::Alternative:
        case NodeKind::Sequence:
          EXPECT_GE(n.children.size(), 2u) << name;
          break;
        case NodeKind::Iteration:
          EXPECT_EQ(n.children.size(), 1u);
          break;
        case NodeKind::Literal:
          EXPECT_FALSE(n.text.empty());
          break;
        default:
          break;
      }
    }
  }
}

TEST(ParseGrammar, DeterministicIds) {
  for (const char* name : kGrammarFixtures) {
    std::string text = read_fixture(name);
    GrammarTree a = parse_grammar(text);
    GrammarTree b = parse_grammar(text);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const GtNode& x = a.nodes()[i];
      const GtNode& y = b.nodes()[i];
      EXPECT_EQ(x.id, y.id);
      EXPECT_EQ(x.kind, y.kind);
      EXPECT_EQ(x.text, y.text);
      EXPECT_EQ(x.children, y.children);
      EXPECT_EQ(x.span, y.span);
    }
  }
}

TEST(ParseGrammar, EveryJoinPointKindIsReachable) {
  std::set<NodeKind> seen;
  for (const char* name : kGrammarFixtures) {
    GrammarTree g = parse_grammar(read_fixture(name));
    for (NodeId id : descendants(g, g.root().id)) seen.insert(g.node(id).kind);
    seen.insert(g.root().kind);
  }
  EXPECT_EQ(seen.size(), 9u);
}

TEST(SerializeGrammar, RoundTripsFixtures) {
  for (const char* name : kGrammarFixtures) {
    GrammarTree g = parse_grammar(read_fixture(name));
    std::string text = serialize_grammar(g);
    GrammarTree again = parse_grammar(text);
    EXPECT_TRUE(structurally_equal(g, again)) << name << "\n" << text;
    EXPECT_EQ(serialize_grammar(again), text);
    EXPECT_EQ(structural_hash(g), structural_hash(again));
  }
}

TEST(SerializeGrammar, EmitsEmptyMarker) {
  GrammarTree g = parse_grammar("a : #empty : B ;");
  EXPECT_NE(serialize_grammar(g).find("#empty"), std::string::npos);
}

TEST(SerializeGrammar, KeepsNestedGroups) {
  // Nested sequences and alternatives must not flatten on re-parse.
  GrammarTree g = parse_grammar("a : B (C D) (E | (F | G)) ((H I)*)? ;");
  GrammarTree again = parse_grammar(serialize_grammar(g));
  EXPECT_TRUE(structurally_equal(g, again)) << serialize_grammar(g);
}

TEST(Descendants, LeafHasNone) {
  GrammarTree g = parse_grammar("a : #empty ;");
  NodeId empty = g.node(g.node(g.rules()[0]).children[0]).children[0];
  EXPECT_TRUE(descendants(g, empty).empty());
}

TEST(Descendants, ExprRuleOfArithmetic) {
  GrammarTree g = parse_grammar(read_fixture("arith.grammar"));
  NodeId expr = *g.find_rule("expr");
  std::vector<NodeId> oracle;
  collect_preorder(g, expr, oracle);
  std::vector<NodeId> got = descendants(g, expr);
  EXPECT_EQ(got, oracle);

  std::map<std::string, int> refs;
  std::map<NodeKind, int> kinds;
  for (NodeId id : got) {
    const GtNode& n = g.node(id);
    ++kinds[n.kind];
    if (n.kind == NodeKind::SymbolRef) ++refs[n.text];
  }
  EXPECT_EQ(refs["term"], 2);
  EXPECT_EQ(refs["PLUS"], 1);
  EXPECT_EQ(refs["MINUS"], 1);
  EXPECT_EQ(kinds[NodeKind::Alternative], 1);
  EXPECT_EQ(kinds[NodeKind::Iteration], 1);
  // Outer production body plus the iterated one.
  EXPECT_EQ(kinds[NodeKind::Sequence], 2);
  EXPECT_EQ(kinds[NodeKind::Production], 1);
  EXPECT_EQ(got.size(), 9u);
}

TEST(Descendants, RootListsAllRules) {
  GrammarTree g = parse_grammar(read_fixture("arith.grammar"));
  std::set<std::string> defs;
  for (NodeId id : descendants(g, g.root().id)) {
    if (g.node(id).kind == NodeKind::SymbolDef) defs.insert(g.node(id).text);
  }
  EXPECT_EQ(defs, (std::set<std::string>{"expr", "term", "factor"}));
}

}  // namespace
}  // namespace gaspect
