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

#ifndef OODSIM_PREDICTIONS_HPP_
#define OODSIM_PREDICTIONS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oodsim {

struct Prediction {
  std::string id;
  std::string text;
  // Per-token log-probabilities of the generated sequence, each <= 0.
  std::optional<std::vector<double>> token_logprobs;
};

class PredictionSet {
 public:
  PredictionSet() = default;
  // Throws InputError on duplicate ids or invalid logprobs.
  explicit PredictionSet(std::vector<Prediction> items);

  std::size_t size() const { return items_.size(); }
  const std::vector<Prediction>& items() const { return items_; }
  const Prediction* find(std::string_view id) const;

 private:
  std::vector<Prediction> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Line-delimited {"id": str, "prediction": str, "token_logprobs": [num]?}.
PredictionSet parse_predictions(std::string_view text);
PredictionSet load_predictions(const std::filesystem::path& path);

}  // namespace oodsim

#endif  // OODSIM_PREDICTIONS_HPP_
