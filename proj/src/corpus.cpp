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

#include "oodsim/corpus.hpp"

#include <fstream>
#include <sstream>

#include "oodsim/error.hpp"
#include "oodsim/lexer.hpp"

namespace oodsim {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::kText2Code: return "text2code";
    case TaskKind::kRefinement: return "refinement";
    case TaskKind::kTranslation: return "translation";
  }
  return "unknown";
}

std::string_view to_string(Partition partition) {
  switch (partition) {
    case Partition::kTrain: return "train";
    case Partition::kValid: return "valid";
    case Partition::kTest: return "test";
  }
  return "unknown";
}

std::string_view to_string(Basis basis) {
  return basis == Basis::kInput ? "input" : "target";
}

TaskKind parse_task(std::string_view name) {
  if (name == "text2code") return TaskKind::kText2Code;
  if (name == "refinement") return TaskKind::kRefinement;
  if (name == "translation") return TaskKind::kTranslation;
  throw InputError("unknown task \"" + std::string(name) +
                   "\" (expected text2code, refinement or translation)");
}

Partition parse_partition(std::string_view name) {
  if (name == "train") return Partition::kTrain;
  if (name == "valid") return Partition::kValid;
  if (name == "test") return Partition::kTest;
  throw InputError("unknown partition \"" + std::string(name) + "\"");
}

Basis parse_basis(std::string_view name) {
  if (name == "input") return Basis::kInput;
  if (name == "target") return Basis::kTarget;
  throw InputError("unknown basis \"" + std::string(name) +
                   "\" (expected input or target)");
}

Corpus::Corpus(TaskKind task, std::vector<CodeSample> samples)
    : task_(task), samples_(std::move(samples)) {
  bool has_train = false;
  bool has_test = false;
  index_.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (s.id.empty()) {
      throw InputError("sample #" + std::to_string(i + 1) + " has an empty id");
    }
    if (s.target.empty()) {
      throw InputError("sample \"" + s.id + "\" has an empty target");
    }
    if (!index_.emplace(s.id, i).second) {
      throw InputError("duplicate id \"" + s.id + "\"");
    }
    has_train |= s.partition == Partition::kTrain;
    has_test |= s.partition == Partition::kTest;
  }
  if (!has_train || !has_test) {
    throw InputError("corpus needs at least one train and one test sample");
  }
}

std::optional<std::size_t> Corpus::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const CodeSample& Corpus::at(std::string_view id) const {
  const auto pos = find(id);
  if (!pos) throw InputError("unknown sample id \"" + std::string(id) + "\"");
  return samples_[*pos];
}

std::vector<std::size_t> Corpus::partition_indices(Partition partition) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].partition == partition) out.push_back(i);
  }
  return out;
}

namespace {

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

const std::string& string_field(const nlohmann::json& obj, const char* key,
                                std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw InputError(line_error(line, std::string("missing field \"") + key + "\""));
  }
  if (!it->is_string()) {
    throw InputError(line_error(line, std::string("field \"") + key + "\" is not a string"));
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

Corpus parse_corpus(std::string_view text, TaskKind task) {
  std::vector<CodeSample> samples;
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    if (!is_valid_utf8(line)) throw InputError(line_error(line_no, "invalid UTF-8"));
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(line_error(line_no, std::string("parse error: ") + e.what()));
    }
    if (!obj.is_object()) throw InputError(line_error(line_no, "record is not a JSON object"));

    CodeSample s;
    s.id = string_field(obj, "id", line_no);
    const auto& partition = string_field(obj, "partition", line_no);
    try {
      s.partition = parse_partition(partition);
    } catch (const InputError& e) {
      throw InputError(line_error(line_no, e.what()));
    }
    s.input = string_field(obj, "input", line_no);
    s.target = string_field(obj, "target", line_no);
    if (s.id.empty()) throw InputError(line_error(line_no, "empty id"));
    if (s.target.empty()) {
      throw InputError(line_error(line_no, "empty target for id \"" + s.id + "\""));
    }
    const auto [it, inserted] = first_line.emplace(s.id, line_no);
    if (!inserted) {
      throw InputError("duplicate id \"" + s.id + "\" on lines " +
                       std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    for (const auto& [key, value] : obj.items()) {
      if (key != "id" && key != "partition" && key != "input" && key != "target") {
        s.extra[key] = value;
      }
    }
    s.raw_line = std::string(line);
    samples.push_back(std::move(s));
  }
  return Corpus(task, std::move(samples));
}

Corpus load_corpus(const std::filesystem::path& path, TaskKind task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_corpus(buf.str(), task);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string serialize_sample(const CodeSample& sample) {
  // nlohmann objects are key-sorted; emit the four fields first by hand.
  std::string out = "{\"id\":" + nlohmann::json(sample.id).dump() +
                    ",\"partition\":" + nlohmann::json(to_string(sample.partition)).dump() +
                    ",\"input\":" + nlohmann::json(sample.input).dump() +
                    ",\"target\":" + nlohmann::json(sample.target).dump();
  for (const auto& [key, value] : sample.extra.items()) {
    out += "," + nlohmann::json(key).dump() + ":" + value.dump();
  }
  out += "}";
  return out;
}

Basis default_basis(TaskKind task) {
  return task == TaskKind::kText2Code ? Basis::kTarget : Basis::kInput;
}

const std::string& basis_text(const CodeSample& sample, TaskKind task,
                              std::optional<Basis> override_basis) {
  const Basis basis = override_basis.value_or(default_basis(task));
  return basis == Basis::kTarget ? sample.target : sample.input;
}

}  // namespace oodsim
