#include "gaspect/prettyprint.hpp"

namespace gaspect {

namespace {

std::string where(const AnnotationStore& store, NodeId node, std::string_view name) {
  auto it = store.by_node().find(node);
  if (it != store.by_node().end()) {
    auto attr = it->second.find(AttributeKey{std::nullopt, std::string(name)});
    if (attr != it->second.end()) {
      const StoredAttribute& s = attr->second;
      return s.provenance.aspect + ":" + std::to_string(s.attribute.loc.line) + ":" +
             std::to_string(s.attribute.loc.column) + ": ";
    }
  }
  return {};
}

// Decoded attribute `name` of `node`, or nullopt when absent.
std::optional<WhitespaceProgram> program(const AnnotationStore& store, NodeId node,
                                         std::string_view name) {
  const Attribute* a = store.lookup(node, name);
  if (!a) return std::nullopt;
  if (!a->value) throw WhitespaceError(where(store, node, name) + std::string(name) + " needs a value");
  try {
    return decode_whitespace(*a->value);
  } catch (const WhitespaceError& e) {
    throw WhitespaceError(where(store, node, name) + std::string(name) + ": " + e.what());
  }
}

void append(WhitespaceProgram& to, const WhitespaceProgram& from) {
  to.insert(to.end(), from.begin(), from.end());
}

class Emitter {
 public:
  Emitter(std::string unit, std::vector<std::string>* warnings)
      : unit_(std::move(unit)), warnings_(warnings) {}

  void run(const WhitespaceProgram& p, std::size_t token) {
    for (const auto& item : p) {
      switch (item.kind) {
        case WhitespaceItem::Kind::Text: text(item.text); break;
        case WhitespaceItem::Kind::IncIndent: ++level_; break;
        case WhitespaceItem::Kind::DecIndent:
          if (level_ == 0) {
            if (warnings_) {
              warnings_->push_back("indentation decreased below zero near token " +
                                   std::to_string(token + 1));
            }
          } else {
            --level_;
          }
          break;
      }
    }
  }

  void text(std::string_view s) {
    for (char c : s) {
      if (c == '\n') {
        trim();
        out_ += '\n';
        line_start_ = true;
      } else if (line_start_ && (c == ' ' || c == '\t')) {
        // Leading blanks are replaced by the indentation.
      } else {
        if (line_start_) {
          for (std::size_t i = 0; i < level_; ++i) out_ += unit_;
          line_start_ = false;
        }
        out_ += c;
      }
    }
  }

  std::string finish() {
    trim();
    std::size_t keep = out_.size();
    while (keep > 0 && out_[keep - 1] == '\n') --keep;
    if (keep < out_.size()) out_.resize(keep + 1);
    return std::move(out_);
  }

 private:
  void trim() {
    while (!out_.empty() && (out_.back() == ' ' || out_.back() == '\t')) out_.pop_back();
  }

  std::string unit_;
  std::vector<std::string>* warnings_;
  std::string out_;
  std::size_t level_ = 0;
  bool line_start_ = true;
};

}  // namespace

WhitespaceProgram decode_whitespace(const Value& value) {
  if (const auto* s = value.as_str()) return {WhitespaceItem::of(s->text)};
  const auto* seq = value.as_seq();
  if (!seq) throw WhitespaceError("expected a string or {{ }} sequence, found " + to_text(value));
  WhitespaceProgram out;
  for (const Value& v : *seq) {
    if (const auto* s = v.as_str()) {
      out.push_back(WhitespaceItem::of(s->text));
    } else if (const auto* n = v.as_name(); n && n->text == "increaseIndent") {
      out.push_back(WhitespaceItem::inc());
    } else if (n && n->text == "decreaseIndent") {
      out.push_back(WhitespaceItem::dec());
    } else {
      throw WhitespaceError("unexpected " + to_text(v) +
                            " in whitespace; expected a string, increaseIndent or decreaseIndent");
    }
  }
  return out;
}

Whitespace effective_whitespace(const ParseTree& tree, std::size_t k, const AnnotationStore& store) {
  std::size_t leaf = tree.leaves().at(k);
  // Enclosing nodes, innermost first, that start (resp. end) at this token.
  std::vector<NodeId> starting;
  std::vector<NodeId> ending;
  for (std::optional<std::size_t> cur = leaf; cur; cur = tree.node(*cur).parent) {
    const ParseNode& n = tree.node(*cur);
    if (n.begin == k) starting.push_back(n.gt);
    if (n.end == k + 1) ending.push_back(n.gt);
  }
  Whitespace ws;
  bool any_before = false;
  for (auto it = starting.rbegin(); it != starting.rend(); ++it) {
    if (auto p = program(store, *it, "before")) {
      append(ws.before, *p);
      any_before = true;
    }
  }
  bool any_after = false;
  for (NodeId id : ending) {
    if (auto p = program(store, id, "after")) {
      append(ws.after, *p);
      any_after = true;
    }
  }
  NodeId root{0};
  if (!any_before && store.node_count() > 0) {
    if (auto p = program(store, root, "defaultBefore")) ws.before = *p;
  }
  if (!any_after && store.node_count() > 0) {
    if (auto p = program(store, root, "defaultAfter")) ws.after = *p;
  }
  return ws;
}

std::string format(const ParseTree& tree, const AnnotationStore& store,
                   std::vector<std::string>* warnings) {
  std::string unit = "    ";
  if (store.node_count() > 0) {
    if (const Attribute* a = store.lookup(NodeId{0}, "indentUnit")) {
      const Str* s = a->value ? a->value->as_str() : nullptr;
      if (!s) throw WhitespaceError(where(store, NodeId{0}, "indentUnit") + "indentUnit must be a string");
      unit = s->text;
    }
  }
  Emitter emit(unit, warnings);
  WhitespaceProgram pending_after;
  for (std::size_t k = 0; k < tree.leaves().size(); ++k) {
    Whitespace ws = effective_whitespace(tree, k, store);
    emit.run(pending_after, k);
    emit.run(ws.before, k);
    emit.text(tree.tokens()[k].text);
    pending_after = std::move(ws.after);
  }
  emit.run(pending_after, tree.leaves().size());
  return emit.finish();
}

}  // namespace gaspect
