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

#ifndef OODSIM_CORPUS_HPP_
#define OODSIM_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace oodsim {

enum class TaskKind { kText2Code, kRefinement, kTranslation };
enum class Partition { kTrain, kValid, kTest };
// Which text field carries the properties that scenarios mask.
enum class Basis { kInput, kTarget };

std::string_view to_string(TaskKind task);
std::string_view to_string(Partition partition);
std::string_view to_string(Basis basis);

// The parse_* functions throw InputError on unknown names.
TaskKind parse_task(std::string_view name);
Partition parse_partition(std::string_view name);
Basis parse_basis(std::string_view name);

struct CodeSample {
  std::string id;
  Partition partition = Partition::kTrain;
  std::string input;
  std::string target;
  // Unknown fields from the source record, carried but ignored.
  nlohmann::json extra = nlohmann::json::object();
  // Exact source line (without the newline); emitted files reuse it so that
  // filtered datasets are byte-identical subsets of the original.
  std::string raw_line;
};

// Immutable after construction; samples keep file order.
class Corpus {
 public:
  // Validates ids (non-empty, unique), targets (non-empty) and partition
  // coverage (at least one train and one test sample). Throws InputError.
  Corpus(TaskKind task, std::vector<CodeSample> samples);

  TaskKind task() const { return task_; }
  const std::vector<CodeSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const CodeSample& operator[](std::size_t i) const { return samples_[i]; }

  std::optional<std::size_t> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }
  const CodeSample& at(std::string_view id) const;  // throws InputError

  // Positions of samples in one partition, in file order.
  std::vector<std::size_t> partition_indices(Partition partition) const;

 private:
  TaskKind task_;
  std::vector<CodeSample> samples_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Line-delimited JSON: {"id", "partition", "input", "target"} per line.
// Blank lines are skipped. Errors carry the 1-based line number.
Corpus load_corpus(const std::filesystem::path& path, TaskKind task);
Corpus parse_corpus(std::string_view text, TaskKind task);

// Canonical single-line JSON for a sample (four fields, then extras).
std::string serialize_sample(const CodeSample& sample);

Basis default_basis(TaskKind task);

// target for text2code, input otherwise; an explicit override wins.
const std::string& basis_text(const CodeSample& sample, TaskKind task,
                              std::optional<Basis> override_basis = std::nullopt);

}  // namespace oodsim

#endif  // OODSIM_CORPUS_HPP_
