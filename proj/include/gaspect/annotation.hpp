#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaspect/grammar.hpp"
#include "gaspect/source.hpp"

namespace gaspect {

struct Attribute;

/// A set of name-value pairs. Attribute order is source order.
struct Annotation {
  std::vector<Attribute> attributes;

  const Attribute* find(const std::optional<std::string>& ns, std::string_view name) const;
  bool empty() const { return attributes.empty(); }

  friend bool operator==(const Annotation&, const Annotation&);
};

struct Str {
  std::string text;
  friend bool operator==(const Str&, const Str&) = default;
};

struct NameLiteral {
  std::string text;
  friend bool operator==(const NameLiteral&, const NameLiteral&) = default;
};

struct Punct {
  char c = 0;
  friend bool operator==(const Punct&, const Punct&) = default;
};

/// Attribute value: 10, 'Hello', SomeName, {b = c; d = 5}, {{1, a b 'str'}}.
/// Punctuation characters only occur as members of a sequence.
struct Value {
  using Seq = std::vector<Value>;
  std::variant<std::int64_t, Str, NameLiteral, Annotation, Seq, Punct> data;

  const std::int64_t* as_int() const { return std::get_if<std::int64_t>(&data); }
  const Str* as_str() const { return std::get_if<Str>(&data); }
  const NameLiteral* as_name() const { return std::get_if<NameLiteral>(&data); }
  const Annotation* as_record() const { return std::get_if<Annotation>(&data); }
  const Seq* as_seq() const { return std::get_if<Seq>(&data); }
  const Punct* as_punct() const { return std::get_if<Punct>(&data); }

  friend bool operator==(const Value&, const Value&) = default;
};

struct Attribute {
  std::optional<std::string> ns;
  std::string name;
  std::optional<Value> value;  // absent for flags
  SourceLoc loc;

  friend bool operator==(const Attribute& a, const Attribute& b) {
    return a.ns == b.ns && a.name == b.name && a.value == b.value;
  }
};

/// Renders a value in advice notation.
std::string to_text(const Value& value);
std::string to_text(const Attribute& attribute);
std::string to_text(const Annotation& annotation);

/// Parses `{ attr; attr }` or the `.attr` shorthand.
Annotation parse_annotation(std::string_view text, std::string source_name = "<annotation>");

/// (namespace, name) identifies an attribute on a node.
struct AttributeKey {
  std::optional<std::string> ns;
  std::string name;

  friend auto operator<=>(const AttributeKey&, const AttributeKey&) = default;
  friend bool operator==(const AttributeKey&, const AttributeKey&) = default;
};

std::string to_string(const AttributeKey& key);

/// Which annotation rule produced an attribute. `rule` is the 0-based index
/// of the rule in its aspect, or -1 for the aspect's grammar annotation.
struct Provenance {
  std::string aspect;
  int rule = -1;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

std::string to_string(const Provenance& p);

struct StoredAttribute {
  Attribute attribute;
  Provenance provenance;

  friend bool operator==(const StoredAttribute&, const StoredAttribute&) = default;
};

class ConflictError : public std::runtime_error {
 public:
  ConflictError(NodeId node, ByteSpan span, AttributeKey key, StoredAttribute existing,
                StoredAttribute incoming);

  NodeId node;
  ByteSpan span;
  AttributeKey key;
  StoredAttribute existing;
  StoredAttribute incoming;
};

/// Weaving output: attributes attached to grammar-tree nodes. The grammar
/// annotation lives on the root node.
class AnnotationStore {
 public:
  using NodeAttributes = std::map<AttributeKey, StoredAttribute>;

  AnnotationStore() = default;
  /// One entry per grammar-tree node, indexed by NodeId.
  explicit AnnotationStore(std::vector<ByteSpan> node_spans);
  static AnnotationStore for_grammar(const GrammarTree& grammar);

  /// Adds every attribute of `annotation` to `node`. Re-attaching an equal
  /// value is a no-op. Throws ConflictError when the key already holds a
  /// different value and std::out_of_range for an unknown node.
  void attach(NodeId node, const Annotation& annotation, const Provenance& provenance);
  void attach(NodeId node, const Attribute& attribute, const Provenance& provenance);

  /// nullptr when absent; a flag attribute has no value.
  const Attribute* lookup(NodeId node, const std::optional<std::string>& ns,
                          std::string_view name) const;
  const Attribute* lookup(NodeId node, std::string_view name) const {
    return lookup(node, std::nullopt, name);
  }

  /// Attributes of the root node.
  Annotation grammar_annotation() const;
  Annotation annotation(NodeId node) const;

  const std::map<NodeId, NodeAttributes>& by_node() const { return by_node_; }
  const std::vector<ByteSpan>& node_spans() const { return spans_; }
  std::size_t node_count() const { return spans_.size(); }
  std::size_t attribute_count() const;

  friend bool operator==(const AnnotationStore&, const AnnotationStore&) = default;

 private:
  std::vector<ByteSpan> spans_;
  std::map<NodeId, NodeAttributes> by_node_;
};

}  // namespace gaspect
