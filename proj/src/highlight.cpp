#include "gaspect/highlight.hpp"

#include <array>
#include <sstream>

namespace gaspect {

namespace {

constexpr std::array<std::string_view, 8> kColors = {"black", "red",     "green", "yellow",
                                                     "blue",  "magenta", "cyan",  "white"};

std::optional<std::string> group_of(const AnnotationStore& store, NodeId node) {
  const Attribute* a = store.lookup(node, "group");
  if (!a || !a->value) return std::nullopt;
  if (const auto* n = a->value->as_name()) return n->text;
  if (const auto* s = a->value->as_str()) return s->text;
  return std::nullopt;
}

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string sgr(const Style& s) {
  std::string codes;
  auto add = [&](const std::string& code) { codes += (codes.empty() ? "" : ";") + code; };
  if (s.bold) add("1");
  if (s.underline) add("4");
  for (std::size_t i = 0; i < kColors.size(); ++i) {
    if (s.color == kColors[i]) add(std::to_string(30 + i));
  }
  return codes.empty() ? "" : "\x1b[" + codes + "m";
}

}  // namespace

std::vector<HighlightSpan> assign_groups(const ParseTree& tree, const AnnotationStore& store) {
  std::vector<HighlightSpan> out;
  for (std::size_t leaf : tree.leaves()) {
    const ParseNode& n = tree.node(leaf);
    std::optional<std::string> group = group_of(store, n.gt);
    for (auto up = n.parent; !group && up; up = tree.node(*up).parent) {
      const ParseNode& p = tree.node(*up);
      if (p.begin != n.begin || p.end != n.end) break;
      group = group_of(store, p.gt);
    }
    out.push_back(HighlightSpan{tree.tokens()[*n.token].span,
                                group.value_or(std::string(kPlainGroup))});
  }
  return out;
}

const Style* Palette::find(std::string_view group) const {
  auto it = styles.find(group);
  return it == styles.end() ? nullptr : &it->second;
}

Palette parse_palette(std::string_view text, std::string source_name) {
  Palette palette;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string line(text.substr(line_start, line_end - line_start));
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto fail = [&](const std::string& msg) {
      throw SyntaxError(source_name, locate(text, line_start), msg);
    };
    if (auto eq = line.find('='); eq != std::string::npos) line.replace(eq, 1, " = ");
    std::istringstream in(line);
    std::string group;
    if (in >> group) {
      if (group == "=") fail("expected a group name");
      std::string eq;
      if (!(in >> eq) || eq != "=") fail("expected '=' after group " + group);
      Style style;
      std::string color;
      if (!(in >> color)) fail("expected a color for group " + group);
      if (color != "default") {
        bool known = false;
        for (auto c : kColors) known = known || c == color;
        if (!known) fail("unknown color '" + color + "'");
        style.color = color;
      }
      for (std::string flag; in >> flag;) {
        if (flag == "bold") {
          style.bold = true;
        } else if (flag == "underline") {
          style.underline = true;
        } else {
          fail("unknown style flag '" + flag + "'");
        }
      }
      if (!palette.styles.emplace(group, style).second) fail("duplicate group " + group);
    }
    line_start = line_end + 1;
  }
  return palette;
}

Palette default_palette() {
  Palette p;
  p.styles["keyword"] = Style{"blue", true, false};
  p.styles["classDeclaration"] = Style{"", false, true};
  p.styles["typeParameterDeclaration"] = Style{"magenta", false, true};
  return p;
}

void validate_spans(std::string_view input, const std::vector<HighlightSpan>& spans) {
  std::size_t pos = 0;
  for (const auto& s : spans) {
    if (s.span.begin < pos || s.span.end < s.span.begin || s.span.end > input.size()) {
      throw std::invalid_argument("highlight spans must be ascending, disjoint and inside the input");
    }
    pos = s.span.end;
  }
}

std::string render_ansi(std::string_view input, const std::vector<HighlightSpan>& spans,
                        const Palette& palette) {
  validate_spans(input, spans);
  std::string out;
  std::size_t pos = 0;
  for (const auto& s : spans) {
    out += input.substr(pos, s.span.begin - pos);
    std::string_view text = input.substr(s.span.begin, s.span.size());
    const Style* style = palette.find(s.group);
    std::string on = style ? sgr(*style) : "";
    if (on.empty()) {
      out += text;
    } else {
      out += on;
      out += text;
      out += "\x1b[0m";
    }
    pos = s.span.end;
  }
  out += input.substr(pos);
  return out;
}

std::string render_html(std::string_view input, const std::vector<HighlightSpan>& spans) {
  validate_spans(input, spans);
  std::string out = "<pre class=\"gaspect\">";
  std::size_t pos = 0;
  for (const auto& s : spans) {
    out += escape_html(input.substr(pos, s.span.begin - pos));
    std::string text = escape_html(input.substr(s.span.begin, s.span.size()));
    if (s.group == kPlainGroup) {
      out += text;
    } else {
      out += "<span class=\"" + escape_html(s.group) + "\">" + text + "</span>";
    }
    pos = s.span.end;
  }
  out += escape_html(input.substr(pos));
  return out + "</pre>";
}

std::string html_stylesheet(const Palette& palette) {
  std::string out;
  for (const auto& [group, style] : palette.styles) {
    out += "pre.gaspect ." + group + " {";
    if (!style.color.empty()) out += " color: " + style.color + ";";
    if (style.bold) out += " font-weight: bold;";
    if (style.underline) out += " text-decoration: underline;";
    out += " }\n";
  }
  return out;
}

std::string render_html_document(std::string_view input, const std::vector<HighlightSpan>& spans,
                                 const Palette& palette, std::string_view title) {
  return "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
         escape_html(title) + "</title>\n<style>\n" + html_stylesheet(palette) +
         "</style>\n</head>\n<body>\n" + render_html(input, spans) + "\n</body>\n</html>\n";
}

}  // namespace gaspect
