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

#ifndef OODSIM_EMBEDDINGS_HPP_
#define OODSIM_EMBEDDINGS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "oodsim/corpus.hpp"
#include "oodsim/matrix.hpp"

namespace oodsim {

// One mean-pooled vector per sample; rows follow file order.
struct EmbeddingSet {
  std::vector<std::string> ids;
  RowMatrix vectors;

  Eigen::Index dim() const { return vectors.cols(); }
  std::size_t size() const { return ids.size(); }
};

// Line-delimited {"id": str, "vec": [num, ...]}. Every train and test sample
// of the corpus must have exactly one row; valid rows are optional. Python's
// NaN / Infinity tokens are accepted syntactically and rejected as
// non-finite values. Throws InputError.
EmbeddingSet load_embeddings(const std::filesystem::path& path, const Corpus& corpus);
EmbeddingSet parse_embeddings(std::string_view text, const Corpus& corpus);

// Rows whose ids satisfy `keep`, in order.
EmbeddingSet select_rows(const EmbeddingSet& set, const std::vector<bool>& keep);

}  // namespace oodsim

#endif  // OODSIM_EMBEDDINGS_HPP_
