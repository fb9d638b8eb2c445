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

#include "oodsim/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "oodsim/error.hpp"

namespace oodsim {
namespace {

// Rewrites bare NaN / Infinity / -Infinity (outside strings) to null.
std::string neutralize_nonfinite(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < line.size()) {
        out += line[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
    } else if (line.substr(i, 3) == "NaN") {
      out += "null";
      i += 2;
    } else if (line.substr(i, 9) == "-Infinity") {
      out += "null";
      i += 8;
    } else if (line.substr(i, 8) == "Infinity") {
      out += "null";
      i += 7;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

EmbeddingSet parse_embeddings(std::string_view text, const Corpus& corpus) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(neutralize_nonfinite(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + "parse error: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("vec") ||
        !j["vec"].is_array()) {
      throw InputError(where + "expected {\"id\": str, \"vec\": [num]}");
    }
    auto id = j["id"].get<std::string>();
    if (!corpus.contains(id)) throw InputError(where + "unknown id \"" + id + "\"");
    if (!seen.insert(id).second) throw InputError(where + "duplicate id \"" + id + "\"");

    std::vector<double> v;
    v.reserve(j["vec"].size());
    for (const auto& x : j["vec"]) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        throw InputError(where + "non-finite value in vector for id \"" + id + "\"");
      }
      v.push_back(x.get<double>());
    }
    if (v.empty()) throw InputError(where + "empty vector for id \"" + id + "\"");
    if (!rows.empty() && v.size() != rows.front().size()) {
      throw InputError(where + "dimension mismatch for id \"" + id + "\": " +
                       std::to_string(v.size()) + " vs " + std::to_string(rows.front().size()));
    }
    ids.push_back(std::move(id));
    rows.push_back(std::move(v));
  }

  std::vector<std::string> missing;
  for (const auto& s : corpus.samples()) {
    if (s.partition != Partition::kValid && !seen.contains(s.id)) missing.push_back(s.id);
  }
  if (!missing.empty()) {
    std::string msg = "embeddings missing for " + std::to_string(missing.size()) + " sample(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(missing.size(), 20); ++k) {
      msg += " " + missing[k];
    }
    if (missing.size() > 20) msg += " ...";
    throw InputError(msg);
  }

  EmbeddingSet set;
  set.ids = std::move(ids);
  set.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      set.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return set;
}

EmbeddingSet load_embeddings(const std::filesystem::path& path, const Corpus& corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open embeddings file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_embeddings(buf.str(), corpus);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

EmbeddingSet select_rows(const EmbeddingSet& set, const std::vector<bool>& keep) {
  EmbeddingSet out;
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < set.ids.size(); ++i) {
    if (keep[i]) {
      out.ids.push_back(set.ids[i]);
      rows.push_back(static_cast<Eigen::Index>(i));
    }
  }
  out.vectors.resize(static_cast<Eigen::Index>(rows.size()), set.dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.vectors.row(static_cast<Eigen::Index>(r)) = set.vectors.row(rows[r]);
  }
  return out;
}

}  // namespace oodsim
