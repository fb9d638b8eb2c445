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

#ifndef OODSIM_CLUSTER_MODEL_HPP_
#define OODSIM_CLUSTER_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "oodsim/corpus.hpp"
#include "oodsim/kmeans.hpp"
#include "oodsim/matrix.hpp"

namespace oodsim {

inline constexpr int kClusterModelFormatVersion = 1;

// Cluster structure over the (reduced) embedding space, with the per-sample
// assignment that serves as the semantic property.
class ClusterModel {
 public:
  ClusterModel() = default;
  ClusterModel(std::vector<std::string> ids, const KMeansResult& fit, std::uint64_t seed);

  int k() const { return static_cast<int>(centroids_.rows()); }
  const RowMatrix& centroids() const { return centroids_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<int>& labels() const { return labels_; }
  double inertia() const { return inertia_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<double>& iteration_inertia() const { return iteration_inertia_; }

  std::optional<int> cluster_of(std::string_view id) const;

  // Run settings carried into the serialized file.
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json pca = nullptr;
  std::optional<ElbowResult> elbow;

  friend nlohmann::json to_json(const ClusterModel& model);
  friend ClusterModel cluster_model_from_json(const nlohmann::json& j);

 private:
  void build_index();

  RowMatrix centroids_;
  std::vector<std::string> ids_;
  std::vector<int> labels_;
  double inertia_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<double> iteration_inertia_;
  std::unordered_map<std::string, int> index_;
};

nlohmann::json to_json(const ClusterModel& model);
// Throws InputError on schema violations.
ClusterModel cluster_model_from_json(const nlohmann::json& j);
ClusterModel load_cluster_model(const std::filesystem::path& path);

// Ids assigned to any of `cluster_ids`, in model order. Throws InputError on
// an id outside [0, K).
std::vector<std::string> cluster_members(const ClusterModel& model,
                                         std::span<const int> cluster_ids);

// First n members of a cluster in corpus file order.
std::vector<CodeSample> sample_cluster_examples(const ClusterModel& model, const Corpus& corpus,
                                                int cluster_id, std::size_t n);

}  // namespace oodsim

#endif  // OODSIM_CLUSTER_MODEL_HPP_
