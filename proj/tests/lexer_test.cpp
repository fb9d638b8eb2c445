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

#include <gtest/gtest.h>

#include "oodsim/error.hpp"
#include "synthetic.hpp"

namespace oodsim {
namespace {

std::vector<std::string> texts(std::string_view code) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(code)) out.push_back(t.text);
  return out;
}

using Texts = std::vector<std::string>;

TEST(Lexer, SimpleStatement) {
  const auto tokens = tokenize("int x = a + 42;");
  ASSERT_EQ(tokens.size(), 7u);
  EXPECT_EQ(tokens[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(tokens[1].kind, TokenKind::kIdentifier);
  EXPECT_EQ(tokens[2].kind, TokenKind::kOperator);
  EXPECT_EQ(tokens[5].kind, TokenKind::kNumber);
  EXPECT_EQ(tokens[6].kind, TokenKind::kPunct);
  EXPECT_EQ(tokens[1].offset, 4u);
}

TEST(Lexer, MaximalMunch) {
  EXPECT_EQ(texts("a>>>=b"), (Texts{"a", ">>>=", "b"}));
  EXPECT_EQ(texts("a>=b"), (Texts{"a", ">=", "b"}));
  EXPECT_EQ(texts("a||b&&c"), (Texts{"a", "||", "b", "&&", "c"}));
  EXPECT_EQ(texts("i++ + ++j"), (Texts{"i", "++", "+", "++", "j"}));
  EXPECT_EQ(texts("x ?" "?= y?.z"), (Texts{"x", "?" "?=", "y", "?.", "z"}));
  EXPECT_EQ(texts("f(x) -> x"), (Texts{"f", "(", "x", ")", "->", "x"}));
}

TEST(Lexer, NullConditionalBeforeDigitIsTernary) {
  EXPECT_EQ(texts("a?.5:b"), (Texts{"a", "?", ".5", ":", "b"}));
}

TEST(Lexer, CommentsDropped) {
  EXPECT_EQ(texts("a /* b */ c // d\n e"), (Texts{"a", "c", "e"}));
  const auto kept = tokenize("a // note\n", true);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[1].kind, TokenKind::kComment);
}

TEST(Lexer, WhitespaceInsensitive) {
  EXPECT_EQ(texts("if(a){b();}"), texts("if ( a )\n{\n\tb ( ) ;\n}"));
}

TEST(Lexer, Numbers) {
  EXPECT_EQ(texts("0x1F 0b101 1.5e-3f 10L 3.14 1_000"),
            (Texts{"0x1F", "0b101", "1.5e-3f", "10L", "3.14", "1_000"}));
  EXPECT_EQ(texts("a.b.c"), (Texts{"a", ".", "b", ".", "c"}));
}

TEST(Lexer, Strings) {
  EXPECT_EQ(texts(R"(s = "a \"b\" c";)"), (Texts{"s", "=", R"("a \"b\" c")", ";"}));
  EXPECT_EQ(texts("c = '\\'';"), (Texts{"c", "=", "'\\''", ";"}));
  EXPECT_EQ(texts("s = @\"C:\\path\"\"x\";"), (Texts{"s", "=", "@\"C:\\path\"\"x\"", ";"}));
  EXPECT_EQ(texts("s = $\"{a + \"}\"}\";"), (Texts{"s", "=", "$\"{a + \"}\"}\"", ";"}));
  EXPECT_EQ(texts("s = \"\"\"\n  text \"quoted\"\n  \"\"\";"),
            (Texts{"s", "=", "\"\"\"\n  text \"quoted\"\n  \"\"\"", ";"}));
}

TEST(Lexer, UnterminatedInputsThrowWithOffset) {
  try {
    tokenize("x = \"abc\ny");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(tokenize("a /* never closed"), LexError);
  EXPECT_THROW(tokenize("c = 'x"), LexError);
  EXPECT_THROW(tokenize("s = \"\"\" open"), LexError);
}

TEST(Lexer, LexErrorIsInputError) {
  EXPECT_THROW(tokenize("\"open"), InputError);
}

TEST(Lexer, PreprocessorLinesAreComments) {
  EXPECT_EQ(texts("#region x\nint a;\n#endregion"), (Texts{"int", "a", ";"}));
}

TEST(Lexer, VerbatimIdentifier) {
  const auto tokens = tokenize("@class x");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].kind, TokenKind::kIdentifier);
}

TEST(Lexer, ByteOrderMarkSkipped) {
  EXPECT_EQ(texts("\xEF\xBB\xBFint a;"), (Texts{"int", "a", ";"}));
}

TEST(Lexer, NonAsciiStaysInOneToken) {
  const auto t = texts("a \xC3\xA9 b");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[1], "\xC3\xA9");
}

TEST(Lexer, TokenSizeCountsNonCommentTokens) {
  EXPECT_EQ(token_size("int x = 1; // comment"), 5u);
  EXPECT_EQ(token_size(""), 0u);
}

TEST(Lexer, KeywordTables) {
  EXPECT_TRUE(is_keyword("while"));
  EXPECT_TRUE(is_keyword("foreach"));
  EXPECT_TRUE(is_keyword("true"));
  EXPECT_FALSE(is_keyword("String"));
  EXPECT_TRUE(is_builtin_type("double"));
  EXPECT_TRUE(is_builtin_type("string"));
  EXPECT_FALSE(is_builtin_type("while"));
}

TEST(Lexer, Utf8Validation) {
  EXPECT_TRUE(is_valid_utf8("plain"));
  EXPECT_TRUE(is_valid_utf8("\xE2\x82\xAC"));
  EXPECT_FALSE(is_valid_utf8("\xC0\xAF"));          // overlong
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));      // surrogate
  EXPECT_FALSE(is_valid_utf8("\xE2\x82"));          // truncated
}

TEST(Lexer, SyntheticCorpusSizesMatchGeneratorTruth) {
  testing::SyntheticOptions opts;
  opts.n_train = 300;
  opts.n_valid = 20;
  opts.n_test = 30;
  const auto corpus = testing::make_synthetic_corpus(opts);
  for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
    ASSERT_EQ(token_size(corpus.samples[i].target), corpus.truth[i].token_size)
        << corpus.samples[i].target;
  }
}

TEST(Lexer, OffsetsPointAtTokenText) {
  const std::string code = "foo(bar, \"baz\") >= 12;";
  for (const auto& t : tokenize(code)) {
    EXPECT_EQ(code.substr(t.offset, t.text.size()), t.text);
  }
}

}  // namespace
}  // namespace oodsim
