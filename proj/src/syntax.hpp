// Shared tokenizer for the grammar, pattern, annotation and aspect notations.
// Internal header; not installed.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gaspect/source.hpp"

namespace gaspect::syntax {

enum class Tok {
  Name,
  Int,
  String,
  Punct,        // any single character from the punctuation set
  DotDot,       // ..
  Ellipsis,     // ...
  AnyProductions,  // {...}
  HashLex,      // #lex
  HashEmpty,    // #empty
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // decoded text for String, raw text otherwise
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is(char c) const { return kind == Tok::Punct && text.size() == 1 && text[0] == c; }
};

/// Splits `text` into tokens. `//` comments and whitespace are skipped.
/// String literals use single quotes with the escapes \n \t \\ \'.
std::vector<Token> tokenize(std::string_view text, const std::string& source_name);

/// Decodes the body of a quoted string (without quotes). Throws SyntaxError
/// on an unknown escape.
std::string unescape(std::string_view body, std::string_view text, std::size_t body_offset,
                     const std::string& source_name);

/// Quotes `s` for re-emission in the notation.
std::string quote(std::string_view s);

class Cursor {
 public:
  Cursor(std::string_view text, std::string source_name);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Tok::End; }

  bool accept(char c);
  const Token& expect(char c, std::string_view what);
  const Token& expect(Tok kind, std::string_view what);

  /// True when token i+1 starts exactly where token i ends.
  bool adjacent(std::size_t ahead) const;

  std::size_t position() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(const Token& at, const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const;

  std::string_view text() const { return text_; }
  const std::string& source_name() const { return source_name_; }
  std::string_view slice(std::size_t begin, std::size_t end) const {
    return text_.substr(begin, end - begin);
  }

 private:
  std::string_view text_;
  std::string source_name_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

}  // namespace gaspect::syntax
