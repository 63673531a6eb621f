#include "syntax.hpp"

#include <cctype>

namespace gaspect::syntax {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Printable punctuation accepted as single-character tokens. Quotes are
// handled separately; '{' and '}' delimit annotations.
constexpr std::string_view kPunct = "`~!@#$%^&*()-+=|\\[]{};:,./?<>";

}  // namespace

std::string unescape(std::string_view body, std::string_view text, std::size_t body_offset,
                     const std::string& source_name) {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\') {
      out += c;
      continue;
    }
    if (i + 1 >= body.size()) {
      throw SyntaxError(source_name, locate(text, body_offset + i), "dangling backslash");
    }
    char e = body[++i];
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '\\': out += '\\'; break;
      case '\'': out += '\''; break;
      default:
        throw SyntaxError(source_name, locate(text, body_offset + i - 1),
                          std::string("unknown escape sequence '\\") + e + "'");
    }
  }
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      default: out += c;
    }
  }
  out += '\'';
  return out;
}

std::vector<Token> tokenize(std::string_view text, const std::string& source_name) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](Tok kind, std::size_t begin, std::size_t end, std::string s) {
    tokens.push_back(Token{kind, std::move(s), begin, end});
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (is_name_start(c)) {
      while (i < n && is_name_char(text[i])) ++i;
      push(Tok::Name, start, i, std::string(text.substr(start, i - start)));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      push(Tok::Int, start, i, std::string(text.substr(start, i - start)));
      continue;
    }
    if (c == '\'') {
      ++i;
      while (i < n && text[i] != '\'' && text[i] != '\n') {
        if (text[i] == '\\' && i + 1 < n) ++i;
        ++i;
      }
      if (i >= n || text[i] != '\'') {
        throw SyntaxError(source_name, locate(text, start), "unterminated string literal");
      }
      auto body = text.substr(start + 1, i - start - 1);
      ++i;
      push(Tok::String, start, i, unescape(body, text, start + 1, source_name));
      continue;
    }
    if (text.substr(i, 5) == "{...}") {
      i += 5;
      push(Tok::AnyProductions, start, i, "{...}");
      continue;
    }
    if (c == '.' && text.substr(i, 3) == "...") {
      i += 3;
      push(Tok::Ellipsis, start, i, "...");
      continue;
    }
    if (c == '.' && text.substr(i, 2) == "..") {
      i += 2;
      push(Tok::DotDot, start, i, "..");
      continue;
    }
    if (c == '#' && i + 1 < n && is_name_start(text[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_name_char(text[j])) ++j;
      auto word = text.substr(i + 1, j - i - 1);
      if (word == "lex" || word == "empty") {
        i = j;
        push(word == "lex" ? Tok::HashLex : Tok::HashEmpty, start, i,
             std::string(text.substr(start, i - start)));
        continue;
      }
    }
    if (kPunct.find(c) != std::string_view::npos) {
      ++i;
      push(Tok::Punct, start, i, std::string(1, c));
      continue;
    }
    throw SyntaxError(source_name, locate(text, start),
                      std::string("unexpected character '") + c + "'");
  }
  push(Tok::End, n, n, "");
  return tokens;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return quote(t.text);
    default: return "'" + t.text + "'";
  }
}

Cursor::Cursor(std::string_view text, std::string source_name)
    : text_(text), source_name_(std::move(source_name)), tokens_(tokenize(text, source_name_)) {}

const Token& Cursor::peek(std::size_t ahead) const {
  std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& Cursor::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Cursor::accept(char c) {
  if (peek().is(c)) {
    next();
    return true;
  }
  return false;
}

const Token& Cursor::expect(char c, std::string_view what) {
  if (!peek().is(c)) {
    fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
  }
  return next();
}

const Token& Cursor::expect(Tok kind, std::string_view what) {
  if (peek().kind != kind) {
    fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
  }
  return next();
}

bool Cursor::adjacent(std::size_t ahead) const {
  const Token& a = peek(ahead);
  const Token& b = peek(ahead + 1);
  return a.kind != Tok::End && b.kind != Tok::End && a.end == b.begin;
}

void Cursor::fail(const Token& at, const std::string& message) const {
  fail_at(at.begin, message);
}

void Cursor::fail_at(std::size_t offset, const std::string& message) const {
  throw SyntaxError(source_name_, locate(text_, offset), message);
}

}  // namespace gaspect::syntax
