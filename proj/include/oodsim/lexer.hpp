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

#ifndef OODSIM_LEXER_HPP_
#define OODSIM_LEXER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace oodsim {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kStringLit,
  kCharLit,
  kOperator,
  kPunct,
  kComment,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;  // byte index of the first character

  bool operator==(const Token&) const = default;
};

// Lexes Java- and C#-style source. The keyword and operator tables are the
// union of both languages; operators use maximal munch. Comments are dropped
// unless `keep_comments` is set. Throws LexError on an unterminated string,
// char literal or block comment.
std::vector<Token> tokenize(std::string_view code, bool keep_comments = false);

// Number of non-comment tokens; the complexity property of a program.
std::size_t token_size(std::string_view code);

bool is_keyword(std::string_view word);

// Primitive or built-in type keyword (int, double, bool, string, ...).
bool is_builtin_type(std::string_view word);

// True iff the bytes form well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view text);

}  // namespace oodsim

#endif  // OODSIM_LEXER_HPP_
