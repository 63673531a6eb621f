#include "gaspect/lexer.hpp"

#include <cctype>
#include <regex>
#include <set>

#include "syntax.hpp"

namespace gaspect {

LexError::LexError(std::string source_name, SourceLoc loc, const std::string& message)
    : std::runtime_error(source_name + ":" + std::to_string(loc.line) + ":" +
                         std::to_string(loc.column) + ": " + message),
      source_name_(std::move(source_name)),
      loc_(loc) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::regex compile(const std::string& pattern) { return std::regex(pattern, std::regex::ECMAScript); }

}  // namespace

LexerSpec parse_lexer_spec(std::string_view text, std::string source_name) {
  LexerSpec spec;
  std::set<std::string, std::less<>> names;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    auto fail = [&](std::size_t col, const std::string& msg) {
      throw SyntaxError(source_name, locate(text, line_start + col), msg);
    };

    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    if (i < line.size() && line[i] != '#') {
      std::size_t name_begin = i;
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
        ++i;
      }
      std::string name(line.substr(name_begin, i - name_begin));
      if (name.empty()) fail(name_begin, "expected a terminal name");
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size() || line[i] != '=') fail(i, "expected '=' after " + name);
      ++i;
      while (i < line.size() && is_space(line[i])) ++i;
      if (i >= line.size() || line[i] != '/') fail(i, "expected '/' to open the regex");
      std::size_t close = line.rfind('/');
      if (close == i) fail(i, "unterminated regex");
      std::string regex(line.substr(i + 1, close - i - 1));
      std::size_t rest = close + 1;
      while (rest < line.size() && is_space(line[rest])) ++rest;
      if (rest < line.size() && line[rest] != '#') fail(rest, "unexpected text after regex");
      if (regex.empty()) fail(i, "empty regex");
      try {
        compile(regex);
      } catch (const std::regex_error& e) {
        fail(i, "invalid regex: " + std::string(e.what()));
      }
      if (name == "skip") {
        if (spec.skip) fail(name_begin, "skip is defined twice");
        spec.skip = regex;
      } else {
        if (!is_terminal_name(name)) fail(name_begin, "terminal names start with an uppercase letter: " + name);
        if (!names.insert(name).second) fail(name_begin, "duplicate terminal " + name);
        spec.terminals.push_back(TerminalDef{name, regex, locate(text, line_start + name_begin)});
      }
    }
    line_start = line_end + 1;
  }
  return spec;
}

std::string describe(const Token& token) {
  return token.kind == Token::Kind::Literal ? syntax::quote(token.name) : token.name;
}

std::vector<Token> tokenize(const LexerSpec& spec, const GrammarTree& grammar,
                            std::string_view input, std::string source_name) {
  std::set<std::string, std::less<>> literals;
  for (const GtNode& n : grammar.nodes()) {
    if (n.kind == NodeKind::Literal) literals.insert(n.text);
  }
  std::vector<std::regex> terminals;
  for (const auto& t : spec.terminals) terminals.push_back(compile(t.regex));
  std::optional<std::regex> skip;
  if (spec.skip) skip = compile(*spec.skip);

  auto match_at = [&](const std::regex& re, std::size_t pos) -> std::size_t {
    auto flags = std::regex_constants::match_continuous;
    if (pos > 0) flags |= std::regex_constants::match_prev_avail;
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_search(input.begin() + static_cast<std::ptrdiff_t>(pos), input.end(), m, re, flags)) {
      return 0;
    }
    return static_cast<std::size_t>(m.length(0));
  };

  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < input.size()) {
    if (skip) {
      if (std::size_t n = match_at(*skip, pos)) {
        pos += n;
        continue;
      }
    }
    Token best;
    std::size_t best_len = 0;
    for (const auto& lit : literals) {
      if (lit.size() > best_len && input.substr(pos, lit.size()) == lit) {
        best = Token{Token::Kind::Literal, lit, lit, {}};
        best_len = lit.size();
      }
    }
    for (std::size_t i = 0; i < terminals.size(); ++i) {
      std::size_t n = match_at(terminals[i], pos);
      if (n > best_len) {
        best = Token{Token::Kind::Terminal, spec.terminals[i].name, std::string(input.substr(pos, n)), {}};
        best_len = n;
      }
    }
    if (best_len == 0) {
      throw LexError(source_name, locate(input, pos),
                     "no token matches " + syntax::quote(input.substr(pos, 1)));
    }
    best.span = ByteSpan{pos, pos + best_len};
    out.push_back(std::move(best));
    pos += best_len;
  }
  return out;
}

}  // namespace gaspect
