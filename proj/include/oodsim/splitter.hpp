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

#ifndef OODSIM_SPLITTER_HPP_
#define OODSIM_SPLITTER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oodsim/cluster_model.hpp"
#include "oodsim/corpus.hpp"
#include "oodsim/distribution.hpp"
#include "oodsim/scenario.hpp"

namespace oodsim {

inline constexpr int kManifestFormatVersion = 1;

struct SplitOptions {
  // Lex failures become errors instead of "no property".
  bool strict = false;
  // Drop property-matching samples from the validation partition as well.
  bool filter_valid = false;
  const TokenSizeTable* sizes = nullptr;
};

// Membership of every corpus sample in the property set of a scenario.
class PropertyPredicate {
 public:
  PropertyPredicate(const Corpus& corpus, std::vector<bool> member, std::size_t lex_failures,
                    std::optional<std::pair<std::size_t, std::size_t>> size_interval);

  // Throws InputError for an id not in the corpus.
  bool operator()(std::string_view id) const;
  bool at(std::size_t corpus_index) const { return member_[corpus_index]; }
  std::size_t lex_failures() const { return lex_failures_; }
  // Inclusive token-size interval for complexity scenarios.
  const std::optional<std::pair<std::size_t, std::size_t>>& size_interval() const {
    return size_interval_;
  }

 private:
  const Corpus* corpus_;
  std::vector<bool> member_;
  std::size_t lex_failures_;
  std::optional<std::pair<std::size_t, std::size_t>> size_interval_;
};

// `clusters` is required for semantic scenarios and ignored otherwise. An
// empty element or cluster list matches nothing.
PropertyPredicate property_predicate(const ScenarioSpec& spec, const Corpus& corpus,
                                     const ClusterModel* clusters = nullptr,
                                     const SplitOptions& options = {});

// Number of masked samples out of `count` candidates: floor(m * count + 0.5).
std::size_t mask_count(double mask_fraction, std::size_t count);

// The first mask_count ids of a seeded shuffle of the ascending-sorted ids.
std::vector<std::string> select_masked(std::vector<std::string> candidates, double mask_fraction,
                                       std::uint64_t seed);

struct SplitStats {
  std::size_t n_train = 0;
  std::size_t n_valid = 0;
  std::size_t n_test = 0;
  std::size_t n_candidates = 0;  // train samples with the property
  std::size_t n_masked = 0;
  std::size_t n_kept_train = 0;
  std::size_t n_ood_test = 0;
  std::size_t n_valid_dropped = 0;
  std::size_t lex_failures = 0;
  double rejected_train_fraction = 0.0;  // n_masked / n_train
  std::optional<RegionLabel> region;
  std::optional<std::pair<std::size_t, std::size_t>> size_interval;
};

// All id lists are in corpus file order.
struct SplitManifest {
  TaskKind task = TaskKind::kText2Code;
  Basis basis = Basis::kTarget;
  ScenarioSpec scenario;
  std::vector<std::string> train_ids;  // training set after rejection
  std::vector<std::string> masked_train_ids;
  // Property-matching train samples left in by a partial mask.
  std::vector<std::string> kept_property_train_ids;
  std::vector<std::string> valid_ids;
  std::vector<std::string> ood_test_ids;
  SplitStats stats;
  std::vector<std::string> warnings;
  nlohmann::json config = nlohmann::json::object();
};

// Throws InputError when the scenario has no test members.
SplitManifest build_split(const Corpus& corpus, const ScenarioSpec& spec,
                          const ClusterModel* clusters = nullptr,
                          const SplitOptions& options = {});

nlohmann::json to_json(const SplitManifest& manifest);
SplitManifest manifest_from_json(const nlohmann::json& j);
SplitManifest load_manifest(const std::filesystem::path& path);

struct EmittedFiles {
  std::filesystem::path train;
  std::filesystem::path valid;
  std::filesystem::path test_ood;
  std::filesystem::path manifest;
};

// Writes train.jsonl, valid.jsonl, test_ood.jsonl and manifest.json. Records
// are copied byte for byte from the corpus.
EmittedFiles emit_training_files(const SplitManifest& manifest, const Corpus& corpus,
                                 const std::filesystem::path& out_dir);

}  // namespace oodsim

#endif  // OODSIM_SPLITTER_HPP_
