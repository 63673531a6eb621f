#include <gtest/gtest.h>

#include "gaspect/annotation.hpp"
#include "gaspect/grammar.hpp"
#include "gaspect/source.hpp"
#include "gaspect/woven.hpp"
#include "test_util.hpp"

namespace gaspect {
namespace {

Value name(std::string s) { return Value{NameLiteral{std::move(s)}}; }
Value str(std::string s) { return Value{Str{std::move(s)}}; }

TEST(ParseAnnotation, SingleNameValue) {
  Annotation a = parse_annotation("{ group = keyword }");
  ASSERT_EQ(a.attributes.size(), 1u);
  EXPECT_EQ(a.attributes[0].name, "group");
  EXPECT_FALSE(a.attributes[0].ns);
  EXPECT_EQ(a.attributes[0].value, name("keyword"));
}

TEST(ParseAnnotation, WhitespaceSequence) {
  Annotation a = parse_annotation("{ after = {{ '\\n' increaseIndent }} }");
  ASSERT_EQ(a.attributes.size(), 1u);
  EXPECT_EQ(a.attributes[0].value, (Value{Value::Seq{str("\n"), name("increaseIndent")}}));
}

TEST(ParseAnnotation, NestedRecord) {
  Annotation a = parse_annotation("{ rec = {b = c; d = 5} }");
  ASSERT_EQ(a.attributes.size(), 1u);
  const Annotation* rec = a.attributes[0].value->as_record();
  ASSERT_NE(rec, nullptr);
  ASSERT_EQ(rec->attributes.size(), 2u);
  EXPECT_EQ(rec->attributes[0].value, name("c"));
  EXPECT_EQ(rec->attributes[1].value, (Value{std::int64_t{5}}));
}

TEST(ParseAnnotation, Empty) { EXPECT_TRUE(parse_annotation("{}").empty()); }

TEST(ParseAnnotation, ValueKinds) {
  Annotation a = parse_annotation(
      "{ i = 10; s = 'Hello'; n = SomeName; flag; seq = {{1, a b 'str'}}; ns:x = 1; }");
  ASSERT_EQ(a.attributes.size(), 6u);
  EXPECT_EQ(a.attributes[0].value, (Value{std::int64_t{10}}));
  EXPECT_EQ(a.attributes[1].value, str("Hello"));
  EXPECT_EQ(a.attributes[2].value, name("SomeName"));
  EXPECT_FALSE(a.attributes[3].value);
  EXPECT_EQ(a.attributes[4].value,
            (Value{Value::Seq{Value{std::int64_t{1}}, Value{Punct{','}}, name("a"), name("b"),
                              str("str")}}));
  EXPECT_EQ(a.attributes[5].ns, std::optional<std::string>("ns"));
  EXPECT_EQ(a.attributes[5].name, "x");
}

TEST(ParseAnnotation, DotShorthand) {
  Annotation a = parse_annotation(".varName = t");
  ASSERT_EQ(a.attributes.size(), 1u);
  EXPECT_EQ(a.attributes[0].name, "varName");
  EXPECT_EQ(a.attributes[0].value, name("t"));
  Annotation b = parse_annotation(".gen:flag");
  EXPECT_EQ(b.attributes[0].ns, std::optional<std::string>("gen"));
}

TEST(ParseAnnotation, EmptySequenceAndEmptyString) {
  Annotation a = parse_annotation("{ a = {{ }}; b = {{ '' }} }");
  EXPECT_EQ(a.attributes[0].value, (Value{Value::Seq{}}));
  EXPECT_EQ(a.attributes[1].value, (Value{Value::Seq{str("")}}));
}

TEST(ParseAnnotation, PercentIsSequencePunctuation) {
  Annotation a = parse_annotation("{ a = {{ % ? < }} }");
  EXPECT_EQ(a.attributes[0].value,
            (Value{Value::Seq{Value{Punct{'%'}}, Value{Punct{'?'}}, Value{Punct{'<'}}}}));
}

TEST(ParseAnnotation, Errors) {
  EXPECT_THROW(parse_annotation("{ a = 1; a = 2 }"), SyntaxError);
  EXPECT_THROW(parse_annotation("{ a = 1"), SyntaxError);
  EXPECT_THROW(parse_annotation("{ a = 'x\\q' }"), SyntaxError);
  EXPECT_THROW(parse_annotation("{ = 1 }"), SyntaxError);
  EXPECT_THROW(parse_annotation("group = keyword"), SyntaxError);
  // Same name in different namespaces is fine.
  EXPECT_NO_THROW(parse_annotation("{ a = 1; x:a = 2 }"));
}

TEST(ParseAnnotation, TextRoundTrip) {
  for (const char* text : {"{ group = keyword }", "{ after = {{ '\\n' increaseIndent }} }",
                           "{ rec = { b = c; d = 5 } }", "{}", "{ f; ns:g = 'it\\'s' }"}) {
    Annotation a = parse_annotation(text);
    EXPECT_EQ(parse_annotation(to_text(a)), a) << text;
  }
}

class StoreTest : public ::testing::Test {
 protected:
  GrammarTree g = parse_grammar(testing::read_fixture("java5.grammar"), "java5.grammar");
  AnnotationStore store = AnnotationStore::for_grammar(g);

  NodeId literal(std::string_view text) const {
    for (const GtNode& n : g.nodes()) {
      if (n.kind == NodeKind::Literal && n.text == text) return n.id;
    }
    throw std::runtime_error("no literal");
  }
};

TEST_F(StoreTest, AttachIsIdempotent) {
  Annotation kw = parse_annotation("{ group = keyword }");
  store.attach(literal("class"), kw, Provenance{"a", 0});
  AnnotationStore once = store;
  store.attach(literal("class"), kw, Provenance{"a", 0});
  EXPECT_EQ(store, once);
  EXPECT_EQ(store.attribute_count(), 1u);
}

TEST_F(StoreTest, ConflictNamesSpanAndBothRules) {
  NodeId id = literal("class");
  store.attach(id, parse_annotation("{ group = keyword }"), Provenance{"hl.aspect", 0});
  try {
    store.attach(id, parse_annotation("{ group = classDeclaration }"), Provenance{"hl.aspect", 2});
    FAIL() << "expected a conflict";
  } catch (const ConflictError& e) {
    EXPECT_EQ(e.node, id);
    EXPECT_EQ(e.span, g.node(id).span);
    EXPECT_EQ(e.existing.provenance.rule, 0);
    EXPECT_EQ(e.incoming.provenance.rule, 2);
    std::string msg = e.what();
    EXPECT_NE(msg.find("rule 1 of hl.aspect"), std::string::npos) << msg;
    EXPECT_NE(msg.find("rule 3 of hl.aspect"), std::string::npos) << msg;
    EXPECT_NE(msg.find(std::to_string(g.node(id).span.begin)), std::string::npos) << msg;
  }
  EXPECT_EQ(store.lookup(id, "group")->value, name("keyword"));
}

TEST_F(StoreTest, UnknownNode) {
  EXPECT_THROW(store.attach(NodeId{static_cast<std::uint32_t>(g.size())},
                            parse_annotation("{ a }"), Provenance{}),
               std::out_of_range);
}

TEST_F(StoreTest, Lookup) {
  NodeId id = literal("class");
  EXPECT_EQ(store.lookup(id, "group"), nullptr);
  store.attach(id, parse_annotation("{ flag; x:group = 1 }"), Provenance{"a", 0});
  const Attribute* flag = store.lookup(id, "flag");
  ASSERT_NE(flag, nullptr);
  EXPECT_FALSE(flag->value);
  EXPECT_EQ(store.lookup(id, "group"), nullptr);
  ASSERT_NE(store.lookup(id, std::string("x"), "group"), nullptr);
}

TEST_F(StoreTest, GrammarAnnotationOnRoot) {
  store.attach(g.root().id, parse_annotation("{ defaultAfter = {{ ' ' }} }"), Provenance{"p", -1});
  EXPECT_EQ(store.grammar_annotation().attributes.size(), 1u);
  EXPECT_EQ(store.lookup(g.root().id, "defaultAfter")->value, (Value{Value::Seq{str(" ")}}));
}

TEST_F(StoreTest, JsonRoundTrip) {
  store.attach(g.root().id, parse_annotation("{ defaultAfter = {{ ' ' }}; n = 3 }"),
               Provenance{"p", -1});
  store.attach(literal("class"),
               parse_annotation("{ group = keyword; rec = { a = {{ '\\n' x , }}; b }; ns:f }"),
               Provenance{"h", 1});
  std::string text = serialize_woven(g, store);
  AnnotationStore back = deserialize_store(text);
  EXPECT_EQ(back, store);
  EXPECT_EQ(serialize_woven(g, back), text);
}

TEST(Woven, RejectsMalformed) {
  EXPECT_THROW(deserialize_store("not json"), std::invalid_argument);
  EXPECT_THROW(deserialize_store("{}"), std::invalid_argument);
  EXPECT_THROW(deserialize_store(R"({"format":"other","version":1})"), std::invalid_argument);
}

}  // namespace
}  // namespace gaspect
