#include <set>

#include "annotation_parser.hpp"

namespace gaspect {

const Attribute* Annotation::find(const std::optional<std::string>& ns,
                                  std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.ns == ns && a.name == name) return &a;
  }
  return nullptr;
}

bool operator==(const Annotation& a, const Annotation& b) { return a.attributes == b.attributes; }

namespace {

// Punctuation accepted as sequence members.
constexpr std::string_view kSequencePunct = "`~!@#$%()-+=|\\[];:,./?<>";

}  // namespace

std::string to_text(const Value& value) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const Str& s) const { return syntax::quote(s.text); }
    std::string operator()(const NameLiteral& n) const { return n.text; }
    std::string operator()(const Annotation& a) const { return to_text(a); }
    std::string operator()(const Value::Seq& seq) const {
      std::string out = "{{";
      for (const auto& v : seq) out += " " + to_text(v);
      return out + " }}";
    }
    std::string operator()(const Punct& p) const { return std::string(1, p.c); }
  };
  return std::visit(Visitor{}, value.data);
}

std::string to_text(const Attribute& attribute) {
  std::string out = attribute.ns ? *attribute.ns + ":" + attribute.name : attribute.name;
  if (attribute.value) out += " = " + to_text(*attribute.value);
  return out;
}

std::string to_text(const Annotation& annotation) {
  if (annotation.attributes.empty()) return "{}";
  std::string out = "{ ";
  for (std::size_t i = 0; i < annotation.attributes.size(); ++i) {
    if (i) out += "; ";
    out += to_text(annotation.attributes[i]);
  }
  return out + " }";
}

std::string to_string(const AttributeKey& key) {
  return key.ns ? *key.ns + ":" + key.name : key.name;
}

std::string to_string(const Provenance& p) {
  if (p.rule < 0) return "grammar annotation of " + p.aspect;
  return "rule " + std::to_string(p.rule + 1) + " of " + p.aspect;
}

namespace detail {

using syntax::Tok;

namespace {

class Parser {
 public:
  explicit Parser(syntax::Cursor& cur) : cur_(cur) {}

  Annotation annotation() {
    Annotation a;
    if (cur_.accept('.')) {
      a.attributes.push_back(attribute());
      return a;
    }
    cur_.expect('{', "'{' or '.'");
    std::set<AttributeKey> seen;
    auto add = [&](Attribute attr) {
      if (!seen.insert(AttributeKey{attr.ns, attr.name}).second) {
        cur_.fail_at(attr.loc.offset, "duplicate attribute '" +
                                          to_string(AttributeKey{attr.ns, attr.name}) + "'");
      }
      a.attributes.push_back(std::move(attr));
    };
    if (cur_.accept('}')) return a;
    add(attribute());
    while (cur_.accept(';')) {
      if (cur_.peek().kind == Tok::Name) add(attribute());
    }
    cur_.expect('}', "';' or '}'");
    return a;
  }

 private:
  Attribute attribute() {
    const auto& first = cur_.expect(Tok::Name, "attribute name");
    Attribute attr;
    attr.loc = locate(cur_.text(), first.begin);
    if (cur_.peek().is(':') && cur_.peek(1).kind == Tok::Name) {
      cur_.next();
      attr.ns = first.text;
      attr.name = cur_.next().text;
    } else {
      attr.name = first.text;
    }
    if (cur_.accept('=')) attr.value = value();
    return attr;
  }

  // Two '{' (or '}') tokens written without space between them.
  bool double_brace(char c) const {
    return cur_.peek().is(c) && cur_.peek(1).is(c) && cur_.adjacent(0);
  }

  Value value() {
    const auto& t = cur_.peek();
    switch (t.kind) {
      case Tok::Int:
        cur_.next();
        try {
          return Value{static_cast<std::int64_t>(std::stoll(t.text))};
        } catch (const std::out_of_range&) {
          cur_.fail(t, "integer out of range");
        }
      case Tok::String:
        cur_.next();
        return Value{Str{t.text}};
      case Tok::Name:
        cur_.next();
        return Value{NameLiteral{t.text}};
      default:
        break;
    }
    if (double_brace('{')) return sequence();
    if (t.is('{') || t.is('.')) return Value{annotation()};
    cur_.fail(t, "expected a value, found " + syntax::describe(t));
  }

  Value sequence() {
    cur_.next();
    cur_.next();
    Value::Seq items;
    while (!double_brace('}')) {
      const auto& t = cur_.peek();
      switch (t.kind) {
        case Tok::End:
          cur_.fail(t, "unterminated '{{' sequence");
        case Tok::DotDot:
        case Tok::Ellipsis:
          cur_.next();
          for (std::size_t i = 0; i < t.text.size(); ++i) items.push_back(Value{Punct{'.'}});
          continue;
        case Tok::HashLex:
        case Tok::HashEmpty:
          cur_.next();
          items.push_back(Value{Punct{'#'}});
          items.push_back(Value{NameLiteral{t.text.substr(1)}});
          continue;
        case Tok::Punct:
          if (!t.is('{') && !t.is('}')) {
            if (kSequencePunct.find(t.text[0]) == std::string_view::npos) {
              cur_.fail(t, "'" + t.text + "' is not a punctuation value");
            }
            cur_.next();
            items.push_back(Value{Punct{t.text[0]}});
            continue;
          }
          if (t.is('}')) cur_.fail(t, "expected '}}' to close the sequence");
          break;
        default:
          break;
      }
      items.push_back(value());
    }
    cur_.next();
    cur_.next();
    return Value{std::move(items)};
  }

  syntax::Cursor& cur_;
};

}  // namespace

Annotation parse_annotation(syntax::Cursor& cur) { return Parser(cur).annotation(); }

}  // namespace detail

Annotation parse_annotation(std::string_view text, std::string source_name) {
  syntax::Cursor cur(text, std::move(source_name));
  Annotation a = detail::parse_annotation(cur);
  if (!cur.at_end()) {
    cur.fail(cur.peek(), "unexpected " + syntax::describe(cur.peek()) + " after annotation");
  }
  return a;
}

static std::string conflict_message(NodeId node, ByteSpan span, const AttributeKey& key,
                                    const StoredAttribute& existing,
                                    const StoredAttribute& incoming) {
  auto val = [](const Attribute& a) { return a.value ? to_text(*a.value) : std::string("(flag)"); };
  return "conflicting values for attribute '" + to_string(key) + "' on node " + to_string(node) +
         " (bytes " + std::to_string(span.begin) + "-" + std::to_string(span.end) +
         "): " + val(existing.attribute) + " from " + to_string(existing.provenance) + " vs " +
         val(incoming.attribute) + " from " + to_string(incoming.provenance);
}

ConflictError::ConflictError(NodeId node_, ByteSpan span_, AttributeKey key_,
                             StoredAttribute existing_, StoredAttribute incoming_)
    : std::runtime_error(conflict_message(node_, span_, key_, existing_, incoming_)),
      node(node_),
      span(span_),
      key(std::move(key_)),
      existing(std::move(existing_)),
      incoming(std::move(incoming_)) {}

AnnotationStore::AnnotationStore(std::vector<ByteSpan> node_spans) : spans_(std::move(node_spans)) {}

AnnotationStore AnnotationStore::for_grammar(const GrammarTree& grammar) {
  std::vector<ByteSpan> spans;
  spans.reserve(grammar.size());
  for (const GtNode& n : grammar.nodes()) spans.push_back(n.span);
  return AnnotationStore(std::move(spans));
}

void AnnotationStore::attach(NodeId node, const Attribute& attribute,
                             const Provenance& provenance) {
  if (node.value >= spans_.size()) {
    throw std::out_of_range("cannot attach to unknown node " + to_string(node));
  }
  AttributeKey key{attribute.ns, attribute.name};
  auto& attrs = by_node_[node];
  auto it = attrs.find(key);
  StoredAttribute incoming{attribute, provenance};
  if (it == attrs.end()) {
    attrs.emplace(std::move(key), std::move(incoming));
    return;
  }
  if (it->second.attribute == attribute) return;
  throw ConflictError(node, spans_[node.value], key, it->second, std::move(incoming));
}

void AnnotationStore::attach(NodeId node, const Annotation& annotation,
                             const Provenance& provenance) {
  for (const auto& attr : annotation.attributes) attach(node, attr, provenance);
}

const Attribute* AnnotationStore::lookup(NodeId node, const std::optional<std::string>& ns,
                                         std::string_view name) const {
  auto it = by_node_.find(node);
  if (it == by_node_.end()) return nullptr;
  auto a = it->second.find(AttributeKey{ns, std::string(name)});
  return a == it->second.end() ? nullptr : &a->second.attribute;
}

Annotation AnnotationStore::annotation(NodeId node) const {
  Annotation out;
  auto it = by_node_.find(node);
  if (it == by_node_.end()) return out;
  for (const auto& [key, stored] : it->second) out.attributes.push_back(stored.attribute);
  return out;
}

Annotation AnnotationStore::grammar_annotation() const { return annotation(NodeId{0}); }

std::size_t AnnotationStore::attribute_count() const {
  std::size_t n = 0;
  for (const auto& [node, attrs] : by_node_) n += attrs.size();
  return n;
}

}  // namespace gaspect
