#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "srlproj/errors.hpp"

namespace srlproj {

enum class TokenKind {
  kIdent,     // lower-case start: relation, parameter or keyword
  kVariable,  // upper-case start
  kNumber,
  kDollar,    // $name; text holds the name
  kPunct,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourceLoc loc;
};

/// Shared tokenizer for the three model dialects. `//` starts a comment.
/// `noisy-or` is lexed as a single identifier.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  const auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  const auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      if (text == "noisy" && src.substr(j, 3) == "-or") {
        text = "noisy-or";
        j += 3;
      }
      const bool upper = std::isupper(static_cast<unsigned char>(c));
      out.push_back({upper ? TokenKind::kVariable : TokenKind::kIdent, text, loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      // A '.' ends a ProbLog statement unless a digit follows.
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      out.push_back({TokenKind::kNumber, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (c == '$') {
      std::size_t j = i + 1;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      if (j == i + 1) throw SyntaxError("expected parameter name after '$'", loc);
      out.push_back({TokenKind::kDollar, std::string(src.substr(i + 1, j - i - 1)), loc});
      advance(j - i);
      continue;
    }
    static constexpr std::string_view kTwoChar[] = {"::", ":-", "<-"};
    bool matched = false;
    for (auto p : kTwoChar) {
      if (src.substr(i, 2) == p) {
        out.push_back({TokenKind::kPunct, std::string(p), loc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("(),.;:{}|^!&/-").find(c) != std::string_view::npos) {
      out.push_back({TokenKind::kPunct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", loc);
  }
  out.push_back({TokenKind::kEnd, "", {line, col}});
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::kEnd; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == TokenKind::kPunct && peek(ahead).text == p;
  }
  bool is_keyword(std::string_view k) const { return peek().kind == TokenKind::kIdent && peek().text == k; }

  bool accept_punct(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  bool accept_keyword(std::string_view k) {
    if (!is_keyword(k)) return false;
    next();
    return true;
  }

  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    return next();
  }
  const Token& expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) fail("expected " + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw SyntaxError(what + (t.kind == TokenKind::kEnd ? " at end of input" : ", found '" + t.text + "'"), t.loc);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace srlproj
