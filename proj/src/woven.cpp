#include "gaspect/woven.hpp"

#include <stdexcept>

#include "json.hpp"

namespace gaspect {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormat = "gaspect-woven";
constexpr int kVersion = 1;

Json attribute_json(const Attribute& a);

Json value_json(const Value& v) {
  struct Visitor {
    Json operator()(std::int64_t i) const { return Json{{"int", i}}; }
    Json operator()(const Str& s) const { return Json{{"str", s.text}}; }
    Json operator()(const NameLiteral& n) const { return Json{{"name", n.text}}; }
    Json operator()(const Punct& p) const { return Json{{"punct", std::string(1, p.c)}}; }
    Json operator()(const Value::Seq& seq) const {
      Json items = Json::array();
      for (const auto& item : seq) items.push_back(value_json(item));
      return Json{{"seq", items}};
    }
    Json operator()(const Annotation& a) const {
      Json attrs = Json::array();
      for (const auto& attr : a.attributes) attrs.push_back(attribute_json(attr));
      return Json{{"record", attrs}};
    }
  };
  return std::visit(Visitor{}, v.data);
}

Json ns_json(const std::optional<std::string>& ns) { return ns ? Json(*ns) : Json(nullptr); }

Json attribute_json(const Attribute& a) {
  Json j;
  j["namespace"] = ns_json(a.ns);
  j["name"] = a.name;
  j["value"] = a.value ? value_json(*a.value) : Json(nullptr);
  return j;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("malformed woven document: " + what);
}

Attribute attribute_from(const Json& j);

Value value_from(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("value must be a one-key object");
  const auto& [tag, body] = *j.items().begin();
  if (tag == "int" && body.is_number_integer()) return Value{body.get<std::int64_t>()};
  if (tag == "str" && body.is_string()) return Value{Str{body.get<std::string>()}};
  if (tag == "name" && body.is_string()) return Value{NameLiteral{body.get<std::string>()}};
  if (tag == "punct" && body.is_string() && body.get<std::string>().size() == 1) {
    return Value{Punct{body.get<std::string>()[0]}};
  }
  if (tag == "seq" && body.is_array()) {
    Value::Seq seq;
    for (const auto& item : body) seq.push_back(value_from(item));
    return Value{std::move(seq)};
  }
  if (tag == "record" && body.is_array()) {
    Annotation a;
    for (const auto& item : body) a.attributes.push_back(attribute_from(item));
    return Value{std::move(a)};
  }
  bad("unknown value tag '" + tag + "'");
}

Attribute attribute_from(const Json& j) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) bad("attribute without name");
  Attribute a;
  a.name = j["name"].get<std::string>();
  if (j.contains("namespace") && !j["namespace"].is_null()) {
    a.ns = j["namespace"].get<std::string>();
  }
  if (j.contains("value") && !j["value"].is_null()) a.value = value_from(j["value"]);
  return a;
}

AnnotationStore store_from(const Json& doc);

}  // namespace

std::string serialize_woven(const GrammarTree& grammar, const AnnotationStore& store) {
  Json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["grammar"] = grammar.source_name();

  Json nodes = Json::array();
  for (const GtNode& n : grammar.nodes()) {
    Json j;
    j["id"] = n.id.value;
    j["kind"] = to_string(n.kind);
    switch (n.kind) {
      case NodeKind::SymbolDef:
      case NodeKind::SymbolRef:
        j["name"] = n.text;
        break;
      case NodeKind::Literal:
        j["text"] = n.text;
        break;
      case NodeKind::Iteration:
        j["iteration"] = to_string(n.iteration);
        break;
      default:
        break;
    }
    j["span"] = Json::array({n.span.begin, n.span.end});
    Json children = Json::array();
    for (NodeId c : n.children) children.push_back(c.value);
    j["children"] = std::move(children);
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);

  Json annotations = Json::array();
  for (const auto& [node, attrs] : store.by_node()) {
    for (const auto& [key, stored] : attrs) {
      Json j;
      j["node"] = node.value;
      j["namespace"] = ns_json(key.ns);
      j["name"] = key.name;
      j["value"] = stored.attribute.value ? value_json(*stored.attribute.value) : Json(nullptr);
      j["aspect"] = stored.provenance.aspect;
      j["rule"] = stored.provenance.rule;
      annotations.push_back(std::move(j));
    }
  }
  doc["annotations"] = std::move(annotations);
  return doc.dump(2) + "\n";
}

AnnotationStore deserialize_store(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(e.what());
  }
  try {
    return store_from(doc);
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

namespace {

AnnotationStore store_from(const Json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kFormat) bad("missing format tag");
  if (doc.value("version", 0) != kVersion) bad("unsupported version");
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) bad("missing nodes");
  if (!doc.contains("annotations") || !doc["annotations"].is_array()) bad("missing annotations");

  std::vector<ByteSpan> spans;
  for (const auto& n : doc.at("nodes")) {
    if (!n.contains("id") || n["id"].get<std::size_t>() != spans.size()) bad("node ids out of order");
    const auto& span = n.at("span");
    spans.push_back(ByteSpan{span.at(0).get<std::size_t>(), span.at(1).get<std::size_t>()});
  }
  AnnotationStore store(std::move(spans));
  for (const auto& a : doc.at("annotations")) {
    Attribute attr = attribute_from(a);
    Provenance prov{a.value("aspect", ""), a.value("rule", -1)};
    try {
      store.attach(NodeId{a.at("node").get<std::uint32_t>()}, attr, prov);
    } catch (const std::out_of_range&) {
      bad("annotation refers to an unknown node");
    } catch (const ConflictError& e) {
      bad(e.what());
    }
  }
  return store;
}

}  // namespace

}  // namespace gaspect
