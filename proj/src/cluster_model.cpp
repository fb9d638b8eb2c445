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

#include "oodsim/cluster_model.hpp"

#include <fstream>

#include "oodsim/error.hpp"

namespace oodsim {

ClusterModel::ClusterModel(std::vector<std::string> ids, const KMeansResult& fit,
                           std::uint64_t seed)
    : centroids_(fit.centroids),
      ids_(std::move(ids)),
      labels_(fit.labels),
      inertia_(fit.inertia),
      seed_(seed),
      iteration_inertia_(fit.inertia_history) {
  if (ids_.size() != labels_.size()) {
    throw std::invalid_argument("cluster model: ids and labels differ in length");
  }
  build_index();
}

void ClusterModel::build_index() {
  index_.clear();
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], labels_[i]);
}

std::optional<int> ClusterModel::cluster_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json to_json(const ClusterModel& model) {
  nlohmann::json centroids = nlohmann::json::array();
  for (Eigen::Index r = 0; r < model.centroids_.rows(); ++r) {
    std::vector<double> row(model.centroids_.row(r).data(),
                            model.centroids_.row(r).data() + model.centroids_.cols());
    centroids.push_back(row);
  }
  nlohmann::json assignments = nlohmann::json::array();
  for (std::size_t i = 0; i < model.ids_.size(); ++i) {
    assignments.push_back({{"id", model.ids_[i]}, {"cluster", model.labels_[i]}});
  }
  nlohmann::json j = {{"format_version", kClusterModelFormatVersion},
                      {"config", model.config},
                      {"pca", model.pca},
                      {"k", model.k()},
                      {"seed", model.seed_},
                      {"inertia", model.inertia_},
                      {"iteration_inertia", model.iteration_inertia_},
                      {"centroids", centroids},
                      {"assignments", assignments}};
  j["elbow"] = model.elbow ? to_json(*model.elbow) : nlohmann::json(nullptr);
  return j;
}

ClusterModel cluster_model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != kClusterModelFormatVersion) {
      throw InputError("unsupported cluster model format_version " +
                       j.at("format_version").dump());
    }
    ClusterModel m;
    const auto& centroids = j.at("centroids");
    const auto k = static_cast<Eigen::Index>(centroids.size());
    const auto dim = k > 0 ? static_cast<Eigen::Index>(centroids.at(0).size()) : 0;
    if (k == 0) throw InputError("cluster model has no centroids");
    m.centroids_.resize(k, dim);
    for (Eigen::Index r = 0; r < k; ++r) {
      const auto& row = centroids.at(static_cast<std::size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != dim) {
        throw InputError("cluster model centroids have inconsistent dimensions");
      }
      for (Eigen::Index c = 0; c < dim; ++c) {
        m.centroids_(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
      }
    }
    for (const auto& a : j.at("assignments")) {
      const int c = a.at("cluster").get<int>();
      if (c < 0 || c >= k) throw InputError("assignment to cluster " + std::to_string(c) + " out of range");
      m.ids_.push_back(a.at("id").get<std::string>());
      m.labels_.push_back(c);
    }
    m.inertia_ = j.at("inertia").get<double>();
    m.seed_ = j.at("seed").get<std::uint64_t>();
    m.iteration_inertia_ = j.value("iteration_inertia", std::vector<double>{});
    m.config = j.value("config", nlohmann::json::object());
    m.pca = j.value("pca", nlohmann::json(nullptr));
    if (j.contains("elbow") && !j["elbow"].is_null()) {
      const auto& e = j["elbow"];
      ElbowResult elbow;
      elbow.best_k = e.at("best_k").get<int>();
      elbow.ks = e.at("ks").get<std::vector<int>>();
      elbow.inertias = e.at("inertias").get<std::vector<double>>();
      elbow.chord_distances = e.at("chord_distances").get<std::vector<double>>();
      m.elbow = std::move(elbow);
    }
    m.build_index();
    if (m.index_.size() != m.ids_.size()) throw InputError("cluster model has duplicate ids");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed cluster model: ") + e.what());
  }
}

ClusterModel load_cluster_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open cluster model " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return cluster_model_from_json(j);
}

std::vector<std::string> cluster_members(const ClusterModel& model,
                                         std::span<const int> cluster_ids) {
  std::vector<bool> wanted(static_cast<std::size_t>(model.k()), false);
  for (const int c : cluster_ids) {
    if (c < 0 || c >= model.k()) {
      throw InputError("cluster id " + std::to_string(c) + " outside [0, " +
                       std::to_string(model.k()) + ")");
    }
    wanted[static_cast<std::size_t>(c)] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < model.ids().size(); ++i) {
    if (wanted[static_cast<std::size_t>(model.labels()[i])]) out.push_back(model.ids()[i]);
  }
  return out;
}

std::vector<CodeSample> sample_cluster_examples(const ClusterModel& model, const Corpus& corpus,
                                                int cluster_id, std::size_t n) {
  if (n == 0) throw InputError("sample_cluster_examples needs n >= 1");
  if (cluster_id < 0 || cluster_id >= model.k()) {
    throw InputError("cluster id " + std::to_string(cluster_id) + " out of range");
  }
  std::vector<CodeSample> out;
  for (const auto& s : corpus.samples()) {
    if (out.size() == n) break;
    const auto c = model.cluster_of(s.id);
    if (c && *c == cluster_id) out.push_back(s);
  }
  return out;
}

}  // namespace oodsim
