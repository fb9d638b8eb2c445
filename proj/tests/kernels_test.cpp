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

#include <gtest/gtest.h>

#include "oodsim/kernels/assign.hpp"
#include "oodsim/kernels/sample_properties.hpp"
#include "oodsim/rng.hpp"
#include "synthetic.hpp"

namespace oodsim {
namespace {

RowMatrix random_points(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  SplitMix64 rng(seed);
  RowMatrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.uniform01();
  }
  return m;
}

TEST(Kernels, AssignParallelEqualsSerial) {
  const auto x = random_points(2000, 16, 1);
  const auto c = random_points(35, 16, 2);
  std::vector<int> la(2000), lb(2000);
  std::vector<double> da(2000), db(2000);
  kernels::assign_nearest(x, c, la, da);
  kernels::assign_nearest_serial(x, c, lb, db);
  EXPECT_EQ(la, lb);
  EXPECT_EQ(da, db);
}

TEST(Kernels, AssignTiesGoToLowestIndex) {
  RowMatrix x(1, 1);
  x << 0.5;
  RowMatrix c(3, 1);
  c << 1.0, 0.0, 1.0;
  std::vector<int> l(1);
  std::vector<double> d(1);
  kernels::assign_nearest(x, c, l, d);
  EXPECT_EQ(l[0], 0);
  EXPECT_DOUBLE_EQ(d[0], 0.25);
}

TEST(Kernels, MinDistanceParallelEqualsSerial) {
  const auto x = random_points(1500, 8, 3);
  const auto c = random_points(1, 8, 4);
  std::vector<double> a(1500, 0.3), b(1500, 0.3);
  kernels::update_min_distance(x, c.row(0).data(), a);
  kernels::update_min_distance_serial(x, c.row(0).data(), b);
  EXPECT_EQ(a, b);
}

TEST(Kernels, SamplePropertiesParallelEqualsSerial) {
  testing::SyntheticOptions opts;
  opts.n_train = 600;
  opts.n_valid = 0;
  opts.n_test = 10;
  opts.element_rate = 0.2;
  auto corpus = testing::make_synthetic_corpus(opts);
  corpus.samples[3].target = "s = \"unterminated";
  std::vector<std::string_view> texts;
  for (const auto& s : corpus.samples) texts.push_back(s.target);
  const auto a = kernels::compute_text_properties(texts);
  const auto b = kernels::compute_text_properties_serial(texts);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a[3].lexed);
  EXPECT_FALSE(a[3].lex_error.empty());
  EXPECT_EQ(a[4].token_size, corpus.truth[4].token_size);
}

}  // namespace
}  // namespace oodsim
