#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/grammar.hpp"
#include "gaspect/source.hpp"

namespace gaspect {

struct TerminalDef {
  std::string name;
  std::string regex;
  SourceLoc loc;
};

/// Lexical definitions for the terminals a grammar leaves open. File format,
/// one definition per line:
///
///     IDENTIFIER = /[A-Za-z_][A-Za-z0-9_]*/
///     skip = /\s+/
///     # comment
///
/// Regexes use ECMAScript syntax.
struct LexerSpec {
  std::vector<TerminalDef> terminals;
  std::optional<std::string> skip;
};

/// Throws SyntaxError on malformed lines, lowercase terminal names, duplicate
/// names and regexes that do not compile.
LexerSpec parse_lexer_spec(std::string_view text, std::string source_name = "<lexer>");

struct Token {
  enum class Kind { Literal, Terminal };

  Kind kind = Kind::Literal;
  /// Literal text or terminal name.
  std::string name;
  std::string text;
  ByteSpan span;

  friend bool operator==(const Token&, const Token&) = default;
};

class LexError : public std::runtime_error {
 public:
  LexError(std::string source_name, SourceLoc loc, const std::string& message);

  const std::string& source_name() const { return source_name_; }
  SourceLoc loc() const { return loc_; }

 private:
  std::string source_name_;
  SourceLoc loc_;
};

/// Maximal munch over the grammar's literals and the lexer spec's terminals. The
/// longest candidate wins; on equal length a literal beats a terminal and an
/// earlier terminal beats a later one. Text matched by `skip` is dropped.
std::vector<Token> tokenize(const LexerSpec& spec, const GrammarTree& grammar,
                            std::string_view input, std::string source_name = "<input>");

/// `'text'` for literals, the terminal name otherwise.
std::string describe(const Token& token);

}  // namespace gaspect
