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

#ifndef OODSIM_TESTS_FIDELITY_HPP_
#define OODSIM_TESTS_FIDELITY_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oodsim/elements.hpp"

namespace oodsim::testing {

struct FidelityMismatch {
  std::string id;
  ElementKind kind;
  std::uint64_t expected;
  std::uint64_t actual;
};

// Agreement of the recognizer with grammar-based annotations.
//   presence:   (sample, kind) pairs whose present/absent state agrees
//   occurrence: sum of min(expected, actual) over sum of max(...)
struct FidelityResult {
  std::size_t n_samples = 0;
  std::array<std::size_t, kNumElementKinds> samples_with_kind{};
  std::size_t presence_agree = 0;
  std::size_t presence_total = 0;
  std::uint64_t occurrence_min_sum = 0;
  std::uint64_t occurrence_max_sum = 0;
  std::vector<FidelityMismatch> mismatches;

  double presence_agreement() const {
    return static_cast<double>(presence_agree) / static_cast<double>(presence_total);
  }
  double occurrence_agreement() const {
    return occurrence_max_sum == 0 ? 1.0
                                   : static_cast<double>(occurrence_min_sum) /
                                         static_cast<double>(occurrence_max_sum);
  }
};

inline FidelityResult element_fidelity(const std::string& fixture_path) {
  std::ifstream in(fixture_path);
  if (!in) throw std::runtime_error("cannot open " + fixture_path);
  FidelityResult r;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto hist = extract_elements(j.at("code").get<std::string>());
    const auto& ann = j.at("annotations");
    ++r.n_samples;
    for (const auto kind : kAllElementKinds) {
      const std::string name(to_string(kind));
      const std::uint64_t expected = ann.contains(name) ? ann[name].get<std::uint64_t>() : 0;
      const std::uint64_t actual = hist.count(kind);
      if (expected > 0) ++r.samples_with_kind[static_cast<std::size_t>(kind)];
      ++r.presence_total;
      if ((expected > 0) == (actual > 0)) ++r.presence_agree;
      r.occurrence_min_sum += std::min(expected, actual);
      r.occurrence_max_sum += std::max(expected, actual);
      if (expected != actual) {
        r.mismatches.push_back({j.at("id").get<std::string>(), kind, expected, actual});
      }
    }
  }
  return r;
}

}  // namespace oodsim::testing

#endif  // OODSIM_TESTS_FIDELITY_HPP_
