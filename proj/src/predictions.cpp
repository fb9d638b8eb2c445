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

#include "oodsim/predictions.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oodsim/error.hpp"

namespace oodsim {

PredictionSet::PredictionSet(std::vector<Prediction> items) : items_(std::move(items)) {
  index_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& p = items_[i];
    if (!index_.emplace(p.id, i).second) {
      throw InputError("duplicate prediction id \"" + p.id + "\"");
    }
    if (p.token_logprobs) {
      if (p.token_logprobs->empty()) {
        throw InputError("prediction \"" + p.id + "\" has empty token_logprobs");
      }
      for (const double v : *p.token_logprobs) {
        if (!std::isfinite(v) || v > 0.0) {
          throw InputError("prediction \"" + p.id +
                           "\" has a token logprob that is not a finite value <= 0");
        }
      }
    }
  }
}

const Prediction* PredictionSet::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

PredictionSet parse_predictions(std::string_view text) {
  std::vector<Prediction> items;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("prediction") || !j["prediction"].is_string()) {
      throw InputError(where + "expected {\"id\": str, \"prediction\": str, ...}");
    }
    Prediction p{j["id"].get<std::string>(), j["prediction"].get<std::string>(), std::nullopt};
    if (j.contains("token_logprobs") && !j["token_logprobs"].is_null()) {
      const auto& lp = j["token_logprobs"];
      if (!lp.is_array()) throw InputError(where + "token_logprobs is not an array");
      std::vector<double> values;
      values.reserve(lp.size());
      for (const auto& v : lp) {
        if (!v.is_number()) throw InputError(where + "token_logprobs holds a non-number");
        values.push_back(v.get<double>());
      }
      p.token_logprobs = std::move(values);
    }
    items.push_back(std::move(p));
  }
  return PredictionSet(std::move(items));
}

PredictionSet load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open predictions file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_predictions(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace oodsim
