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

#ifndef OODSIM_TESTS_BRUTE_FORCE_HPP_
#define OODSIM_TESTS_BRUTE_FORCE_HPP_

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "oodsim/cluster_model.hpp"
#include "oodsim/splitter.hpp"
#include "synthetic.hpp"

namespace oodsim::testing {

// Property membership computed from generator truth only.
struct BruteSplit {
  std::vector<bool> predicate;  // per sample
  std::set<std::string> train_candidates;
  std::set<std::string> ood_test;
  std::set<std::string> all_train;
};

inline BruteSplit brute_force_split(const SyntheticCorpus& s, const ScenarioSpec& spec,
                                    const std::vector<int>& cluster_of_sample = {}) {
  const auto n = s.samples.size();
  BruteSplit out;
  out.predicate.assign(n, false);
  if (const auto* r = std::get_if<ComplexityRange>(&spec.params)) {
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.samples[i].partition == Partition::kTrain) train.push_back(i);
    }
    std::stable_sort(train.begin(), train.end(), [&](std::size_t a, std::size_t b) {
      return s.truth[a].token_size < s.truth[b].token_size;
    });
    const auto count = static_cast<double>(train.size());
    const auto begin = static_cast<std::size_t>(r->lo_pct * count / 100.0);
    const auto end = static_cast<std::size_t>(r->hi_pct * count / 100.0);
    if (begin < end) {
      const auto lo = s.truth[train[begin]].token_size;
      const auto hi = s.truth[train[end - 1]].token_size;
      for (std::size_t i = 0; i < n; ++i) {
        out.predicate[i] = s.truth[i].token_size >= lo && s.truth[i].token_size <= hi;
      }
    }
  } else if (const auto* kinds = std::get_if<std::vector<ElementKind>>(&spec.params)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto k : *kinds) out.predicate[i] = out.predicate[i] || s.truth[i].elements.contains(k);
    }
  } else {
    const auto& clusters = std::get<std::vector<int>>(spec.params);
    for (std::size_t i = 0; i < n; ++i) {
      out.predicate[i] = std::find(clusters.begin(), clusters.end(), cluster_of_sample[i]) !=
                         clusters.end();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& smp = s.samples[i];
    if (smp.partition == Partition::kTrain) {
      out.all_train.insert(smp.id);
      if (out.predicate[i]) out.train_candidates.insert(smp.id);
    } else if (smp.partition == Partition::kTest && out.predicate[i]) {
      out.ood_test.insert(smp.id);
    }
  }
  return out;
}

// Empty when the manifest agrees with the brute-force split; otherwise a
// description of the first disagreement.
inline std::string compare_split(const SplitManifest& m, const BruteSplit& b, double mask_fraction) {
  const std::set<std::string> train(m.train_ids.begin(), m.train_ids.end());
  const std::set<std::string> masked(m.masked_train_ids.begin(), m.masked_train_ids.end());
  const std::set<std::string> kept(m.kept_property_train_ids.begin(),
                                   m.kept_property_train_ids.end());
  const std::set<std::string> ood(m.ood_test_ids.begin(), m.ood_test_ids.end());
  if (ood != b.ood_test) return "ood_test_ids differ from brute force";
  std::set<std::string> both;
  std::set_union(train.begin(), train.end(), masked.begin(), masked.end(),
                 std::inserter(both, both.end()));
  if (both != b.all_train || both.size() != train.size() + masked.size()) {
    return "train_ids and masked_train_ids do not partition the train set";
  }
  if (!std::includes(b.train_candidates.begin(), b.train_candidates.end(), masked.begin(),
                     masked.end())) {
    return "a masked id does not satisfy the predicate";
  }
  std::set<std::string> pool = masked;
  pool.insert(kept.begin(), kept.end());
  if (pool != b.train_candidates || pool.size() != masked.size() + kept.size()) {
    return "masked plus kept property ids differ from the brute-force candidates";
  }
  const auto expected = static_cast<std::size_t>(
      std::floor(mask_fraction * static_cast<double>(b.train_candidates.size()) + 0.5));
  if (masked.size() != expected) {
    return "masked " + std::to_string(masked.size()) + " ids, expected " +
           std::to_string(expected);
  }
  if (m.train_ids.size() != train.size() || m.masked_train_ids.size() != masked.size()) {
    return "duplicate ids in the manifest";
  }
  return "";
}

}  // namespace oodsim::testing

#endif  // OODSIM_TESTS_BRUTE_FORCE_HPP_
