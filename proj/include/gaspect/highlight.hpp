#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/annotation.hpp"
#include "gaspect/runtime_parser.hpp"

namespace gaspect {

inline constexpr std::string_view kPlainGroup = "plain";

struct HighlightSpan {
  ByteSpan span;
  std::string group;

  friend bool operator==(const HighlightSpan&, const HighlightSpan&) = default;
};

/// One span per token. A token takes the `group` attribute of its grammar
/// leaf; failing that, of the innermost enclosing node that derives only
/// this token; failing that, `plain`.
std::vector<HighlightSpan> assign_groups(const ParseTree& tree, const AnnotationStore& store);

struct Style {
  /// One of black, red, green, yellow, blue, magenta, cyan, white, or empty
  /// for the terminal's default color.
  std::string color;
  bool bold = false;
  bool underline = false;

  friend bool operator==(const Style&, const Style&) = default;
};

struct Palette {
  std::map<std::string, Style, std::less<>> styles;

  /// nullptr for groups without a style; they render plain.
  const Style* find(std::string_view group) const;
};

/// Palette file, one entry per line: `group = color [bold] [underline]`,
/// where color may be `default`. `#` starts a comment.
Palette parse_palette(std::string_view text, std::string source_name = "<palette>");

/// keyword bold, declarations underlined.
Palette default_palette();

/// Throws std::invalid_argument unless spans are ascending, disjoint and
/// inside the input.
void validate_spans(std::string_view input, const std::vector<HighlightSpan>& spans);

/// Input with each styled span wrapped in SGR escape codes.
std::string render_ansi(std::string_view input, const std::vector<HighlightSpan>& spans,
                        const Palette& palette);

/// `<pre class="gaspect">` block; every non-plain token is wrapped in a
/// `<span>` classed by its group. All text is entity-escaped.
std::string render_html(std::string_view input, const std::vector<HighlightSpan>& spans);

/// CSS rules for the palette's groups, scoped to `pre.gaspect`.
std::string html_stylesheet(const Palette& palette);

/// Standalone HTML page: stylesheet plus render_html output.
std::string render_html_document(std::string_view input, const std::vector<HighlightSpan>& spans,
                                 const Palette& palette, std::string_view title);

}  // namespace gaspect
