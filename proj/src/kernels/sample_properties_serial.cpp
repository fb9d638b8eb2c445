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

#include "oodsim/error.hpp"
#include "oodsim/kernels/sample_properties.hpp"

namespace oodsim::kernels {

SampleProperties compute_properties(std::string_view text) {
  SampleProperties p;
  try {
    const auto tokens = tokenize(text);
    p.token_size = tokens.size();
    p.elements = extract_elements(tokens);
    p.lexed = true;
  } catch (const LexError& e) {
    p.lex_error = e.what();
  }
  return p;
}

std::vector<SampleProperties> compute_text_properties_serial(
    std::span<const std::string_view> texts) {
  std::vector<SampleProperties> out;
  out.reserve(texts.size());
  for (const auto text : texts) out.push_back(compute_properties(text));
  return out;
}

}  // namespace oodsim::kernels
