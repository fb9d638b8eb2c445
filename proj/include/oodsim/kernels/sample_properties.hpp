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

#ifndef OODSIM_KERNELS_SAMPLE_PROPERTIES_HPP_
#define OODSIM_KERNELS_SAMPLE_PROPERTIES_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodsim/corpus.hpp"
#include "oodsim/elements.hpp"

namespace oodsim::kernels {

// Per-text lexical properties: token size and element histogram.
struct SampleProperties {
  bool lexed = false;
  std::size_t token_size = 0;
  ElementHistogram elements;
  std::string lex_error;  // empty when lexed

  bool operator==(const SampleProperties&) const = default;
};

SampleProperties compute_properties(std::string_view text);

// One entry per text, in input order. The OpenMP version distributes texts
// across threads; each entry is computed independently.
std::vector<SampleProperties> compute_text_properties(std::span<const std::string_view> texts);
std::vector<SampleProperties> compute_text_properties_serial(
    std::span<const std::string_view> texts);

// Basis texts of corpus[indices[i]].
std::vector<SampleProperties> compute_sample_properties(
    const Corpus& corpus, std::span<const std::size_t> indices,
    std::optional<Basis> basis_override = std::nullopt);

}  // namespace oodsim::kernels

#endif  // OODSIM_KERNELS_SAMPLE_PROPERTIES_HPP_
