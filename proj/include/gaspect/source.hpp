#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gaspect {

/// Position inside a source text. Lines and columns are 1-based, columns
/// count bytes.
struct SourceLoc {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

/// Half-open byte range [begin, end).
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }

  friend auto operator<=>(const ByteSpan&, const ByteSpan&) = default;
};

SourceLoc locate(std::string_view text, std::size_t offset);

/// Raised by every text-format parser in the library (grammars, patterns,
/// annotations, aspects, lexer specs, palettes).
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string source_name, SourceLoc loc, std::string message);

  const std::string& source_name() const { return source_name_; }
  const SourceLoc& loc() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_name_;
  SourceLoc loc_;
  std::string message_;
};

}  // namespace gaspect
