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

#ifndef OODSIM_CORPUS_STATS_HPP_
#define OODSIM_CORPUS_STATS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "oodsim/corpus.hpp"
#include "oodsim/elements.hpp"

namespace oodsim {

// Nearest-rank quantile of sorted values: sorted[ceil(q*N) - 1], with q = 0
// mapping to the minimum. Requires a non-empty input.
std::size_t nearest_rank_quantile(std::span<const std::size_t> sorted, double q);

struct TokenSizeSummary {
  std::size_t count = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  // Quantiles at kQuantileLevels.
  std::vector<std::size_t> quantiles;
};

inline constexpr std::array<double, 7> kQuantileLevels = {0.03, 0.25, 0.48, 0.5,
                                                          0.75, 0.97, 1.0};

struct CorpusStats {
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
  std::size_t n_test = 0;
  // Over train basis texts that lex.
  TokenSizeSummary train_token_sizes;
  // Number of train samples containing each kind.
  std::array<std::size_t, kNumElementKinds> element_samples{};
  std::size_t lex_failures = 0;
};

CorpusStats corpus_stats(const Corpus& corpus,
                         std::optional<Basis> basis_override = std::nullopt);

nlohmann::json to_json(const CorpusStats& stats);

}  // namespace oodsim

#endif  // OODSIM_CORPUS_STATS_HPP_
