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

#include "oodsim/corpus.hpp"

#include <gtest/gtest.h>

#include "oodsim/corpus_stats.hpp"
#include "oodsim/error.hpp"

namespace oodsim {
namespace {

constexpr std::string_view kCorpus =
    R"({"id": "a", "partition": "train", "input": "add two", "target": "int f() { return 1 + 2; }", "lang": "java"}
{"id": "b", "partition": "valid", "input": "x", "target": "void g() { }"}

{"id": "c", "partition": "test", "input": "y", "target": "while (true) { }"}
)";

std::string expect_input_error(std::string_view text) {
  try {
    parse_corpus(text, TaskKind::kText2Code);
  } catch (const InputError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no InputError for: " << text;
  return "";
}

TEST(Corpus, ParsesAndIndexes) {
  const auto c = parse_corpus(kCorpus, TaskKind::kText2Code);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].id, "a");
  EXPECT_EQ(c[1].partition, Partition::kValid);
  EXPECT_EQ(c.at("c").target, "while (true) { }");
  EXPECT_EQ(c.find("b"), 1u);
  EXPECT_FALSE(c.contains("zz"));
  EXPECT_THROW(c.at("zz"), InputError);
  EXPECT_EQ(c.partition_indices(Partition::kTrain), std::vector<std::size_t>{0});
  EXPECT_EQ(c[0].extra["lang"], "java");
}

TEST(Corpus, RawLinePreservedAndSerializeCanonical) {
  const auto c = parse_corpus(kCorpus, TaskKind::kText2Code);
  EXPECT_EQ(c[0].raw_line.substr(0, 11), R"({"id": "a",)");
  const auto line = serialize_sample(c[0]);
  EXPECT_EQ(line.substr(0, 38), R"({"id":"a","partition":"train","input":)");
  const auto again = parse_corpus(line + "\n" + c[2].raw_line, TaskKind::kText2Code);
  EXPECT_EQ(again[0].target, c[0].target);
  EXPECT_EQ(again[0].extra, c[0].extra);
}

TEST(Corpus, CrlfLinesAccepted) {
  const std::string text =
      "{\"id\":\"a\",\"partition\":\"train\",\"input\":\"\",\"target\":\"x;\"}\r\n"
      "{\"id\":\"b\",\"partition\":\"test\",\"input\":\"\",\"target\":\"y;\"}\r\n";
  EXPECT_EQ(parse_corpus(text, TaskKind::kText2Code).size(), 2u);
}

TEST(Corpus, DuplicateIdNamesBothLines) {
  const auto msg = expect_input_error(
      R"({"id":"a","partition":"train","input":"","target":"x"}
{"id":"t","partition":"test","input":"","target":"x"}
{"id":"a","partition":"train","input":"","target":"y"})");
  EXPECT_NE(msg.find("duplicate id \"a\" on lines 1 and 3"), std::string::npos) << msg;
}

TEST(Corpus, ValidationErrors) {
  EXPECT_NE(expect_input_error("{not json}").find("line 1"), std::string::npos);
  EXPECT_NE(expect_input_error(R"({"id":"a","partition":"train","input":""})").find("target"),
            std::string::npos);
  EXPECT_NE(expect_input_error(R"({"id":"a","partition":"dev","input":"","target":"x"})")
                .find("partition"),
            std::string::npos);
  EXPECT_NE(expect_input_error(R"({"id":"a","partition":"train","input":"","target":""})")
                .find("empty target"),
            std::string::npos);
  EXPECT_NE(expect_input_error(R"({"id":7,"partition":"train","input":"","target":"x"})")
                .find("not a string"),
            std::string::npos);
  EXPECT_NE(expect_input_error(R"({"id":"a","partition":"train","input":"","target":"x"})")
                .find("at least one train and one test"),
            std::string::npos);
  EXPECT_NE(expect_input_error("{\"id\":\"a\",\"partition\":\"train\",\"input\":\"\xff\",\"target\":\"x\"}")
                .find("UTF-8"),
            std::string::npos);
  EXPECT_NE(expect_input_error("[1, 2]").find("not a JSON object"), std::string::npos);
}

TEST(Corpus, MissingFileIsInputError) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl", TaskKind::kText2Code), InputError);
}

TEST(Corpus, EnumsParse) {
  EXPECT_EQ(parse_task("refinement"), TaskKind::kRefinement);
  EXPECT_EQ(to_string(TaskKind::kTranslation), "translation");
  EXPECT_THROW(parse_task("summarize"), InputError);
  EXPECT_EQ(parse_basis("input"), Basis::kInput);
  EXPECT_THROW(parse_basis("both"), InputError);
}

TEST(Corpus, DefaultBasisByTask) {
  EXPECT_EQ(default_basis(TaskKind::kText2Code), Basis::kTarget);
  EXPECT_EQ(default_basis(TaskKind::kRefinement), Basis::kInput);
  EXPECT_EQ(default_basis(TaskKind::kTranslation), Basis::kInput);
  CodeSample s;
  s.input = "in";
  s.target = "out";
  EXPECT_EQ(basis_text(s, TaskKind::kText2Code), "out");
  EXPECT_EQ(basis_text(s, TaskKind::kRefinement), "in");
  EXPECT_EQ(basis_text(s, TaskKind::kRefinement, Basis::kTarget), "out");
}

TEST(CorpusStats, NearestRankQuantile) {
  std::vector<std::size_t> v(100);
  std::iota(v.begin(), v.end(), std::size_t{1});
  EXPECT_EQ(nearest_rank_quantile(v, 0.5), 50u);
  EXPECT_EQ(nearest_rank_quantile(v, 0.03), 3u);
  EXPECT_EQ(nearest_rank_quantile(v, 0.0), 1u);
  EXPECT_EQ(nearest_rank_quantile(v, 1.0), 100u);
  const std::vector<std::size_t> odd = {2, 4, 8};
  EXPECT_EQ(nearest_rank_quantile(odd, 0.5), 4u);
}

TEST(CorpusStats, CountsAndSummary) {
  const auto c = parse_corpus(kCorpus, TaskKind::kText2Code);
  const auto st = corpus_stats(c);
  EXPECT_EQ(st.n_train, 1u);
  EXPECT_EQ(st.n_valid, 1u);
  EXPECT_EQ(st.n_test, 1u);
  EXPECT_EQ(st.train_token_sizes.count, 1u);
  EXPECT_EQ(st.train_token_sizes.min, 11u);
  EXPECT_EQ(st.lex_failures, 0u);
  const auto j = to_json(st);
  EXPECT_TRUE(j.contains("train_token_sizes"));
}

}  // namespace
}  // namespace oodsim
