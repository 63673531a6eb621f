#include <gtest/gtest.h>

#include <regex>
#include <set>

#include "gaspect/aspect.hpp"
#include "gaspect/highlight.hpp"
#include "test_util.hpp"

namespace gaspect {
namespace {

using testing::read_fixture;

struct Java {
  GrammarTree grammar = parse_grammar(read_fixture("java5.grammar"), "java5.grammar");
  LexerSpec lexer = parse_lexer_spec(read_fixture("java.lex"), "java.lex");
  AnnotationStore store =
      weave(grammar, {parse_aspect(read_fixture("highlight.aspect"), "highlight.aspect")}).store;

  std::vector<HighlightSpan> groups(std::string_view input, std::string_view start) const {
    return assign_groups(parse_input(grammar, start, tokenize(lexer, grammar, input)), store);
  }
};

std::vector<std::pair<std::string, std::string>> labelled(std::string_view input,
                                                          const std::vector<HighlightSpan>& spans) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : spans) out.emplace_back(input.substr(s.span.begin, s.span.size()), s.group);
  return out;
}

using Labels = std::vector<std::pair<std::string, std::string>>;

TEST(AssignGroups, ClassHeader) {
  Java java;
  std::string input = "class Example<A> { }";
  EXPECT_EQ(labelled(input, java.groups(input, "normalClassDeclaration")),
            (Labels{{"class", "keyword"},
                    {"Example", "classDeclaration"},
                    {"<", "plain"},
                    {"A", "typeParameterDeclaration"},
                    {">", "plain"},
                    {"{", "plain"},
                    {"}", "plain"}}));
}

TEST(AssignGroups, WildcardIsDeclaring) {
  Java java;
  std::string input = "<? super B>";
  EXPECT_EQ(labelled(input, java.groups(input, "typeArguments")),
            (Labels{{"<", "plain"},
                    {"?", "typeParameterDeclaration"},
                    {"super", "keyword"},
                    {"B", "plain"},
                    {">", "plain"}}));
}

TEST(AssignGroups, UnannotatedIsPlain) {
  Java java;
  std::string input = "class X { int y ; }";
  ParseTree t = parse_input(java.grammar, "normalClassDeclaration", tokenize(java.lexer, java.grammar, input));
  auto spans = assign_groups(t, AnnotationStore::for_grammar(java.grammar));
  ASSERT_EQ(spans.size(), t.tokens().size());
  for (const auto& s : spans) EXPECT_EQ(s.group, kPlainGroup);
}

TEST(AssignGroups, InnermostSingleTokenNodeWins) {
  GrammarTree g = parse_grammar("s : a 'y' ; a : 'x' ;");
  std::vector<Token> tokens{{Token::Kind::Literal, "x", "x", {0, 1}}, {Token::Kind::Literal, "y", "y", {2, 3}}};
  ParseTree t = parse_input(g, "s", tokens);

  WeaveResult outer = weave(g, {parse_aspect("s : a .. @a: { group = outer } ;")});
  ASSERT_TRUE(outer.ok());
  EXPECT_EQ(assign_groups(t, outer.store)[0].group, "outer");

  WeaveResult both = weave(g, {parse_aspect("s : a .. @a: { group = outer } ;\n"
                                            "a : 'x' @'x': { group = inner } ;")});
  ASSERT_TRUE(both.ok());
  EXPECT_EQ(assign_groups(t, both.store)[0].group, "inner");

  // A node spanning two tokens does not lend its group to either.
  AnnotationStore store = AnnotationStore::for_grammar(g);
  NodeId seq = g.node(g.node(*g.find_rule("s")).children[0]).children[0];
  ASSERT_EQ(g.node(seq).kind, NodeKind::Sequence);
  store.attach(seq, parse_annotation("{ group = wide }"), Provenance{"t", 0});
  for (const auto& s : assign_groups(t, store)) EXPECT_EQ(s.group, kPlainGroup);
}

TEST(Palette, Parse) {
  Palette p = parse_palette(read_fixture("java.palette"));
  ASSERT_EQ(p.styles.size(), 3u);
  EXPECT_EQ(*p.find("keyword"), (Style{"blue", true, false}));
  EXPECT_EQ(*p.find("classDeclaration"), (Style{"", false, true}));
  EXPECT_EQ(*p.find("typeParameterDeclaration"), (Style{"magenta", false, true}));
  EXPECT_EQ(p.find("other"), nullptr);
  EXPECT_THROW(parse_palette("keyword = purple"), SyntaxError);
  EXPECT_THROW(parse_palette("keyword blue"), SyntaxError);
  EXPECT_THROW(parse_palette("keyword = blue shiny"), SyntaxError);
  EXPECT_THROW(parse_palette("a = red\na = blue"), SyntaxError);
  EXPECT_THROW(parse_palette("= red"), SyntaxError);
  EXPECT_TRUE(parse_palette("# only a comment\n\n").styles.empty());
}

TEST(RenderAnsi, EmptyPaletteIsIdentity) {
  std::string input = "class X";
  std::vector<HighlightSpan> spans{{{0, 5}, "keyword"}, {{6, 7}, "classDeclaration"}};
  EXPECT_EQ(render_ansi(input, spans, Palette{}), input);
}

TEST(RenderAnsi, BoldKeyword) {
  Palette p;
  p.styles["keyword"] = Style{"", true, false};
  std::vector<HighlightSpan> spans{{{0, 5}, "keyword"}, {{6, 7}, "plain"}};
  EXPECT_EQ(render_ansi("class X", spans, p), "\x1b[1mclass\x1b[0m X");
  p.styles["plain"] = Style{"red", false, true};
  EXPECT_EQ(render_ansi("class X", spans, p), "\x1b[1mclass\x1b[0m \x1b[4;31mX\x1b[0m");
}

TEST(RenderAnsi, RejectsBadSpans) {
  Palette p;
  EXPECT_THROW(render_ansi("class X", {{{0, 5}, "a"}, {{4, 7}, "b"}}, p), std::invalid_argument);
  EXPECT_THROW(render_ansi("class X", {{{6, 7}, "a"}, {{0, 5}, "b"}}, p), std::invalid_argument);
  EXPECT_THROW(render_ansi("class X", {{{6, 9}, "a"}}, p), std::invalid_argument);
  EXPECT_THROW(render_html("class X", {{{0, 5}, "a"}, {{4, 7}, "b"}}), std::invalid_argument);
}

TEST(RenderHtml, Escaping) {
  EXPECT_EQ(render_html("a<b", {{{0, 1}, "plain"}, {{1, 2}, "plain"}, {{2, 3}, "plain"}}),
            "<pre class=\"gaspect\">a&lt;b</pre>");
  EXPECT_EQ(render_html("a & 'b'", {}), "<pre class=\"gaspect\">a &amp; &#39;b&#39;</pre>");
}

TEST(RenderHtml, KeywordSpan) {
  std::vector<HighlightSpan> spans{{{0, 5}, "keyword"}, {{6, 7}, "plain"}};
  std::string html = render_html("class X", spans);
  EXPECT_EQ(html, "<pre class=\"gaspect\"><span class=\"keyword\">class</span> X</pre>");
  EXPECT_EQ(render_html("class X", spans), html);
}

TEST(RenderHtml, Document) {
  std::string doc = render_html_document("class X", {{{0, 5}, "keyword"}}, default_palette(), "X.java");
  EXPECT_NE(doc.find("<title>X.java</title>"), std::string::npos);
  EXPECT_NE(doc.find("pre.gaspect .keyword { color: blue; font-weight: bold; }"), std::string::npos);
  EXPECT_NE(doc.find("<span class=\"keyword\">class</span>"), std::string::npos);
}

std::string strip_ansi(const std::string& s) {
  return std::regex_replace(s, std::regex("\x1b\\[[0-9;]*m"), "");
}

std::string strip_html(const std::string& s) {
  std::string text = std::regex_replace(s, std::regex("<[^>]*>"), "");
  for (auto [entity, c] : std::vector<std::pair<std::string, std::string>>{
           {"&lt;", "<"}, {"&gt;", ">"}, {"&quot;", "\""}, {"&#39;", "'"}, {"&amp;", "&"}}) {
    text = std::regex_replace(text, std::regex(entity), c);
  }
  return text;
}

TEST(Highlight, TextPreservationOnFixtures) {
  struct Case {
    const char* grammar;
    const char* lexer;
    const char* aspect;
    const char* input;
    const char* start;
  };
  for (const Case& c : {Case{"java5.grammar", "java.lex", "highlight.aspect", "example.java", "normalClassDeclaration"},
                        Case{"java5.grammar", "java.lex", "highlight.aspect", "class_body.java", "normalClassDeclaration"},
                        Case{"java5.grammar", "java.lex", "highlight.aspect", "type_parameters.java", "typeParameters"},
                        Case{"arith.grammar", "arith.lex", nullptr, "sum.arith", "expr"}}) {
    GrammarTree g = parse_grammar(read_fixture(c.grammar), c.grammar);
    std::vector<Aspect> aspects;
    if (c.aspect) aspects.push_back(parse_aspect(read_fixture(c.aspect), c.aspect));
    WeaveResult woven = weave(g, aspects);
    ASSERT_TRUE(woven.ok());
    std::string input = read_fixture(c.input);
    ParseTree t = parse_input(g, c.start, tokenize(parse_lexer_spec(read_fixture(c.lexer)), g, input));
    auto spans = assign_groups(t, woven.store);
    ASSERT_EQ(spans.size(), t.tokens().size()) << c.input;
    std::set<std::string> woven_groups;
    for (const auto& [node, attrs] : woven.store.by_node()) {
      for (const auto& [key, stored] : attrs) {
        if (key.name == "group") woven_groups.insert(to_text(*stored.attribute.value));
      }
    }
    for (const auto& s : spans) {
      if (s.group != kPlainGroup) {
        EXPECT_TRUE(woven_groups.count(s.group)) << s.group;
      }
    }
    EXPECT_EQ(strip_ansi(render_ansi(input, spans, default_palette())), input) << c.input;
    EXPECT_EQ(strip_html(render_html(input, spans)), input) << c.input;
  }
}

}  // namespace
}  // namespace gaspect
