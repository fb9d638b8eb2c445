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

#include <omp.h>

#include "oodsim/kernels/sample_properties.hpp"

namespace oodsim::kernels {

std::vector<SampleProperties> compute_text_properties(std::span<const std::string_view> texts) {
  std::vector<SampleProperties> out(texts.size());
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
  // Dynamic schedule: program lengths vary by orders of magnitude.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = compute_properties(texts[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<SampleProperties> compute_sample_properties(const Corpus& corpus,
                                                        std::span<const std::size_t> indices,
                                                        std::optional<Basis> basis_override) {
  std::vector<std::string_view> texts;
  texts.reserve(indices.size());
  for (const auto i : indices) {
    texts.emplace_back(basis_text(corpus[i], corpus.task(), basis_override));
  }
  return compute_text_properties(texts);
}

}  // namespace oodsim::kernels
