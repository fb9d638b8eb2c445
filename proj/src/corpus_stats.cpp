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

#include "oodsim/corpus_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oodsim/kernels/sample_properties.hpp"

namespace oodsim {

std::size_t nearest_rank_quantile(std::span<const std::size_t> sorted, double q) {
  const auto n = sorted.size();
  const double rank = std::ceil(q * static_cast<double>(n));
  const auto idx = rank <= 1.0 ? std::size_t{0}
                               : std::min(n, static_cast<std::size_t>(rank)) - 1;
  return sorted[idx];
}

CorpusStats corpus_stats(const Corpus& corpus, std::optional<Basis> basis_override) {
  CorpusStats stats;
  for (const auto& s : corpus.samples()) {
    switch (s.partition) {
      case Partition::kTrain: ++stats.n_train; break;
      case Partition::kValid: ++stats.n_valid; break;
      case Partition::kTest: ++stats.n_test; break;
    }
  }

  const auto train = corpus.partition_indices(Partition::kTrain);
  const auto props = kernels::compute_sample_properties(corpus, train, basis_override);
  std::vector<std::size_t> sizes;
  for (const auto& p : props) {
    if (!p.lexed) {
      ++stats.lex_failures;
      continue;
    }
    sizes.push_back(p.token_size);
    for (const auto kind : kAllElementKinds) {
      if (p.elements.contains(kind)) ++stats.element_samples[static_cast<std::size_t>(kind)];
    }
  }
  std::sort(sizes.begin(), sizes.end());
  auto& ts = stats.train_token_sizes;
  ts.count = sizes.size();
  if (!sizes.empty()) {
    ts.min = sizes.front();
    ts.max = sizes.back();
    ts.mean = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0})) /
              static_cast<double>(sizes.size());
    for (const double q : kQuantileLevels) ts.quantiles.push_back(nearest_rank_quantile(sizes, q));
  }
  return stats;
}

nlohmann::json to_json(const CorpusStats& stats) {
  nlohmann::json j;
  j["counts"] = {{"train", stats.n_train}, {"valid", stats.n_valid}, {"test", stats.n_test}};
  const auto& ts = stats.train_token_sizes;
  nlohmann::json sizes = {{"count", ts.count}, {"min", ts.min}, {"max", ts.max}, {"mean", ts.mean}};
  nlohmann::json q = nlohmann::json::array();
  for (std::size_t i = 0; i < ts.quantiles.size(); ++i) {
    q.push_back({{"q", kQuantileLevels[i]}, {"value", ts.quantiles[i]}});
  }
  sizes["quantiles"] = q;
  sizes["quantile_rule"] = "nearest-rank";
  j["train_token_sizes"] = sizes;
  nlohmann::json el = nlohmann::json::object();
  for (const auto kind : kAllElementKinds) {
    el[std::string(to_string(kind))] = stats.element_samples[static_cast<std::size_t>(kind)];
  }
  j["train_samples_with_element"] = el;
  j["lex_failures"] = stats.lex_failures;
  return j;
}

}  // namespace oodsim
