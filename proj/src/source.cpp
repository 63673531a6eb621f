#include "gaspect/source.hpp"

namespace gaspect {

SourceLoc locate(std::string_view text, std::size_t offset) {
  SourceLoc loc;
  loc.offset = offset;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

static std::string format_location(const std::string& name, const SourceLoc& loc,
                                   const std::string& message) {
  return name + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) +
         ": " + message;
}

SyntaxError::SyntaxError(std::string source_name, SourceLoc loc, std::string message)
    : std::runtime_error(format_location(source_name, loc, message)),
      source_name_(std::move(source_name)),
      loc_(loc),
      message_(std::move(message)) {}

}  // namespace gaspect
