// Copyright 2026 The oodsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oodsim/lexer.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "oodsim/error.hpp"

namespace oodsim {
namespace {

const std::unordered_set<std::string_view>& keyword_table() {
  static const std::unordered_set<std::string_view> kKeywords = {
      // Java
      "abstract", "assert", "boolean", "break", "byte", "case", "catch",
      "char", "class", "const", "continue", "default", "do", "double", "else",
      "enum", "extends", "final", "finally", "float", "for", "goto", "if",
      "implements", "import", "instanceof", "int", "interface", "long",
      "native", "new", "package", "private", "protected", "public", "return",
      "short", "static", "strictfp", "super", "switch", "synchronized", "this",
      "throw", "throws", "transient", "try", "void", "volatile", "while",
      "true", "false", "null",
      // C# additions
      "as", "base", "bool", "checked", "decimal", "delegate", "event",
      "explicit", "extern", "fixed", "foreach", "implicit", "in", "internal",
      "is", "lock", "namespace", "object", "operator", "out", "override",
      "params", "readonly", "ref", "sbyte", "sealed", "sizeof", "stackalloc",
      "string", "struct", "typeof", "uint", "ulong", "unchecked", "unsafe",
      "ushort", "using", "virtual"};
  return kKeywords;
}

// Longest first so the first prefix hit is the maximal munch.
constexpr std::array<std::string_view, 30> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "?\?=", "->", "::", "++", "--",
    "&&",   "||",  "==",  "!=",  "<=",  ">=",  "+=", "-=", "*=", "/=",
    "%=",   "&=",  "|=",  "^=",  "<<",  ">>",  "??", "?.", "=>", "=",
};

constexpr std::string_view kSingleOperators = "+-*/%<>!~?:&|^";
constexpr std::string_view kPunct = "()[]{};,.@";
// Punctuation that never starts a longer token.
constexpr std::string_view kBrackets = "()[]{};,";

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_hex(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}
bool is_ident_char(unsigned char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  Lexer(std::string_view src, bool keep_comments)
      : src_(src), keep_comments_(keep_comments) {}

  std::vector<Token> run() {
    out_.reserve(src_.size() / 4);
    // UTF-8 byte order mark.
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) break;
      lex_one();
    }
    return std::move(out_);
  }

 private:
  unsigned char at(std::size_t i) const {
    return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
  }

  void skip_space() {
    while (pos_ < src_.size() && is_space(at(pos_))) {
      if (at(pos_) == '\n') line_start_ = true;
      ++pos_;
    }
  }

  void emit(TokenKind kind, std::size_t begin) {
    if (kind != TokenKind::kComment || keep_comments_) {
      out_.push_back({kind, std::string(src_.substr(begin, pos_ - begin)), begin});
    }
    line_start_ = false;
  }

  void lex_one() {
    const std::size_t begin = pos_;
    const unsigned char c = at(pos_);
    const unsigned char n = at(pos_ + 1);

    if (c == '/' && n == '/') {
      while (pos_ < src_.size() && at(pos_) != '\n') ++pos_;
      emit(TokenKind::kComment, begin);
      return;
    }
    if (c == '/' && n == '*') {
      const auto end = src_.find("*/", pos_ + 2);
      if (end == std::string_view::npos) {
        throw LexError("unterminated block comment", begin);
      }
      pos_ = end + 2;
      emit(TokenKind::kComment, begin);
      return;
    }
    // C# preprocessor directive: the rest of the line is inert.
    if (c == '#' && line_start_) {
      while (pos_ < src_.size() && at(pos_) != '\n') ++pos_;
      emit(TokenKind::kComment, begin);
      return;
    }
    if (c == '"') {
      if (src_.substr(pos_, 3) == "\"\"\"") {
        lex_text_block(begin);
      } else {
        ++pos_;
        lex_quoted(begin, '"', /*multiline=*/false);
      }
      emit(TokenKind::kStringLit, begin);
      return;
    }
    if (c == '\'') {
      ++pos_;
      lex_quoted(begin, '\'', /*multiline=*/false);
      emit(TokenKind::kCharLit, begin);
      return;
    }
    if (c == '@' || c == '$') {
      // C# verbatim / interpolated strings: @"", $"", $@"", @$"".
      std::size_t p = pos_;
      bool verbatim = false;
      bool interpolated = false;
      while ((at(p) == '@' || at(p) == '$') && p - pos_ < 2) {
        verbatim |= at(p) == '@';
        interpolated |= at(p) == '$';
        ++p;
      }
      if (at(p) == '"' && (p - pos_ == 1 || (verbatim && interpolated))) {
        pos_ = p + 1;
        if (verbatim) {
          lex_verbatim(begin, interpolated);
        } else {
          lex_interpolated(begin);
        }
        emit(TokenKind::kStringLit, begin);
        return;
      }
      if (c == '@' && is_ident_start(n)) {
        // @identifier (C# escaped identifier); Java annotations are handled
        // as '@' punct followed by a plain identifier.
        if (is_keyword(identifier_at(pos_ + 1))) {
          ++pos_;
          while (is_ident_char(at(pos_))) ++pos_;
          emit(TokenKind::kIdentifier, begin);
          return;
        }
      }
    }
    if (is_digit(c) || (c == '.' && is_digit(n))) {
      lex_number();
      emit(TokenKind::kNumber, begin);
      return;
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(at(pos_))) ++pos_;
      const auto word = src_.substr(begin, pos_ - begin);
      emit(is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier,
           begin);
      return;
    }
    if (kBrackets.find(static_cast<char>(c)) != std::string_view::npos) {
      ++pos_;
      emit(TokenKind::kPunct, begin);
      return;
    }
    for (const auto op : kOperators) {
      if (static_cast<unsigned char>(op[0]) != c) continue;
      if (src_.substr(pos_, op.size()) == op) {
        // `c ?.5 : x` is a conditional, not a null-conditional access.
        if (op == "?." && is_digit(at(pos_ + 2))) continue;
        pos_ += op.size();
        emit(TokenKind::kOperator, begin);
        return;
      }
    }
    ++pos_;
    if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
      emit(TokenKind::kOperator, begin);
      return;
    }
    // Anything else (punctuation, stray bytes) is a one-byte punct token;
    // multi-byte UTF-8 sequences outside identifiers stay together.
    if (kPunct.find(static_cast<char>(c)) == std::string_view::npos && c >= 0x80) {
      while (pos_ < src_.size() && (at(pos_) & 0xC0) == 0x80) ++pos_;
    }
    emit(TokenKind::kPunct, begin);
  }

  std::string_view identifier_at(std::size_t p) const {
    std::size_t e = p;
    while (e < src_.size() && is_ident_char(at(e))) ++e;
    return src_.substr(p, e - p);
  }

  // Regular "..." or '...' body after the opening quote.
  void lex_quoted(std::size_t begin, char quote, bool multiline) {
    const char* what = quote == '"' ? "unterminated string literal"
                                    : "unterminated char literal";
    while (true) {
      if (pos_ >= src_.size()) throw LexError(what, begin);
      const unsigned char ch = at(pos_);
      if (ch == '\\') {
        pos_ += 2;
        continue;
      }
      if (ch == '\n' && !multiline) throw LexError(what, begin);
      ++pos_;
      if (ch == static_cast<unsigned char>(quote)) return;
    }
  }

  void lex_text_block(std::size_t begin) {
    pos_ += 3;
    while (true) {
      if (pos_ >= src_.size()) {
        throw LexError("unterminated string literal", begin);
      }
      if (at(pos_) == '\\') {
        pos_ += 2;
        continue;
      }
      if (src_.substr(pos_, 3) == "\"\"\"") {
        pos_ += 3;
        // A run of more than three quotes closes on the last three.
        while (at(pos_) == '"') ++pos_;
        return;
      }
      ++pos_;
    }
  }

  void lex_verbatim(std::size_t begin, bool interpolated) {
    while (true) {
      if (pos_ >= src_.size()) {
        throw LexError("unterminated string literal", begin);
      }
      const unsigned char ch = at(pos_);
      if (ch == '"') {
        if (at(pos_ + 1) == '"') {
          pos_ += 2;
          continue;
        }
        ++pos_;
        return;
      }
      if (interpolated && ch == '{') {
        if (at(pos_ + 1) == '{') {
          pos_ += 2;
          continue;
        }
        skip_hole(begin);
        continue;
      }
      ++pos_;
    }
  }

  void lex_interpolated(std::size_t begin) {
    while (true) {
      if (pos_ >= src_.size()) {
        throw LexError("unterminated string literal", begin);
      }
      const unsigned char ch = at(pos_);
      if (ch == '\\') {
        pos_ += 2;
        continue;
      }
      if (ch == '\n') throw LexError("unterminated string literal", begin);
      if (ch == '{') {
        if (at(pos_ + 1) == '{') {
          pos_ += 2;
          continue;
        }
        skip_hole(begin);
        continue;
      }
      ++pos_;
      if (ch == '"') return;
    }
  }

  // Interpolation hole `{ expr }`; nested literals are skipped whole.
  void skip_hole(std::size_t begin) {
    int depth = 0;
    while (true) {
      if (pos_ >= src_.size()) {
        throw LexError("unterminated string literal", begin);
      }
      const unsigned char ch = at(pos_);
      if (ch == '{') {
        ++depth;
      } else if (ch == '}') {
        if (--depth == 0) {
          ++pos_;
          return;
        }
      } else if (ch == '"' || ch == '\'') {
        const std::size_t inner = pos_++;
        lex_quoted(inner, static_cast<char>(ch), false);
        continue;
      }
      ++pos_;
    }
  }

  void lex_number() {
    if (at(pos_) == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X')) {
      pos_ += 2;
      while (is_hex(at(pos_)) || at(pos_) == '_') ++pos_;
    } else if (at(pos_) == '0' && (at(pos_ + 1) == 'b' || at(pos_ + 1) == 'B') &&
               (at(pos_ + 2) == '0' || at(pos_ + 2) == '1')) {
      pos_ += 2;
      while (at(pos_) == '0' || at(pos_) == '1' || at(pos_) == '_') ++pos_;
    } else {
      while (is_digit(at(pos_)) || at(pos_) == '_') ++pos_;
      if (at(pos_) == '.' && is_digit(at(pos_ + 1))) {
        ++pos_;
        while (is_digit(at(pos_)) || at(pos_) == '_') ++pos_;
      }
      if ((at(pos_) == 'e' || at(pos_) == 'E') &&
          (is_digit(at(pos_ + 1)) ||
           ((at(pos_ + 1) == '+' || at(pos_ + 1) == '-') && is_digit(at(pos_ + 2))))) {
        pos_ += 2;
        while (is_digit(at(pos_))) ++pos_;
      }
    }
    constexpr std::string_view kSuffix = "lLfFdDmMuU";
    while (pos_ < src_.size() &&
           kSuffix.find(static_cast<char>(at(pos_))) != std::string_view::npos) {
      ++pos_;
    }
  }

  std::string_view src_;
  bool keep_comments_;
  std::size_t pos_ = 0;
  bool line_start_ = true;
  std::vector<Token> out_;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kNumber: return "number";
    case TokenKind::kStringLit: return "string_lit";
    case TokenKind::kCharLit: return "char_lit";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kComment: return "comment";
  }
  return "unknown";
}

bool is_keyword(std::string_view word) {
  return keyword_table().contains(word);
}

bool is_builtin_type(std::string_view word) {
  static const std::unordered_set<std::string_view> kTypes = {
      "boolean", "byte",  "char",  "short",  "int",    "long",
      "float",   "double", "bool", "decimal", "sbyte", "uint",
      "ulong",   "ushort", "string", "object"};
  return kTypes.contains(word);
}

std::vector<Token> tokenize(std::string_view code, bool keep_comments) {
  return Lexer(code, keep_comments).run();
}

std::size_t token_size(std::string_view code) { return tokenize(code).size(); }

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::array<std::uint32_t, 5> kMin = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace oodsim
