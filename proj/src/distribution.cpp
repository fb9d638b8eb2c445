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

#include "oodsim/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "oodsim/error.hpp"
#include "oodsim/kernels/sample_properties.hpp"
#include "oodsim/lexer.hpp"

namespace oodsim {

void validate(const ComplexityRange& range) {
  if (!(range.lo_pct >= 0.0 && range.lo_pct < range.hi_pct && range.hi_pct <= 100.0)) {
    throw InputError("invalid complexity range " + to_string(range) +
                     " (need 0 <= lo < hi <= 100)");
  }
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw InputError("cannot parse " + std::string(what) + " \"" + std::string(text) + "\"");
  }
  return v;
}

std::string format_pct(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ComplexityRange parse_complexity_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("complexity range must look like lo:hi, got \"" + std::string(text) + "\"");
  }
  ComplexityRange r{parse_double(text.substr(0, colon), "range start"),
                    parse_double(text.substr(colon + 1), "range end")};
  validate(r);
  return r;
}

std::string to_string(const ComplexityRange& range) {
  return format_pct(range.lo_pct) + ":" + format_pct(range.hi_pct);
}

std::string_view to_string(RegionLabel label) {
  return label == RegionLabel::kExtrapolation ? "extrapolation" : "interpolation";
}

RegionLabel region_label(const ComplexityRange& range) {
  return (range.lo_pct <= 0.0 || range.hi_pct >= 100.0) ? RegionLabel::kExtrapolation
                                                         : RegionLabel::kInterpolation;
}

std::vector<ComplexityRange> default_complexity_scenarios() {
  return {{0, 3}, {24, 27}, {48, 51}, {72, 75}, {97, 100}};
}

TokenSizeTable load_token_sizes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open token size file " + path.string());
  TokenSizeTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("size") ||
        !j["size"].is_number_unsigned()) {
      throw InputError(where + "expected {\"id\": str, \"size\": non-negative int}");
    }
    if (!table.emplace(j["id"].get<std::string>(), j["size"].get<std::size_t>()).second) {
      throw InputError(where + "duplicate id " + j["id"].dump());
    }
  }
  return table;
}

std::vector<std::optional<std::size_t>> basis_token_sizes(const Corpus& corpus,
                                                          std::span<const std::size_t> indices,
                                                          const SizeOptions& options) {
  std::vector<std::optional<std::size_t>> out(indices.size());
  if (options.sizes != nullptr) {
    std::vector<std::string> missing;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const auto& id = corpus[indices[k]].id;
      const auto it = options.sizes->find(id);
      if (it == options.sizes->end()) {
        missing.push_back(id);
      } else {
        out[k] = it->second;
      }
    }
    if (!missing.empty()) {
      std::string msg = "token size table lacks " + std::to_string(missing.size()) + " id(s):";
      for (std::size_t k = 0; k < std::min<std::size_t>(missing.size(), 10); ++k) {
        msg += " " + missing[k];
      }
      throw InputError(msg);
    }
    return out;
  }
  std::vector<std::string> errors(indices.size());
  const auto n = static_cast<std::ptrdiff_t>(indices.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = indices[static_cast<std::size_t>(k)];
    try {
      out[static_cast<std::size_t>(k)] =
          token_size(basis_text(corpus[i], corpus.task(), options.basis));
    } catch (const LexError& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }
  if (options.strict) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (!out[k]) throw InputError("sample \"" + corpus[indices[k]].id + "\": " + errors[k]);
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> rank_bounds(const ComplexityRange& range, std::size_t n) {
  // lo*N is formed before dividing so integral percentages stay exact.
  const double dn = static_cast<double>(n);
  const auto begin = static_cast<std::size_t>(std::floor(range.lo_pct * dn / 100.0));
  const auto end = static_cast<std::size_t>(std::floor(range.hi_pct * dn / 100.0));
  return {std::min(begin, n), std::min(end, n)};
}

ComplexitySelection complexity_members(const Corpus& corpus, const ComplexityRange& range,
                                       const SizeOptions& options) {
  validate(range);
  std::vector<std::size_t> all(corpus.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return complexity_members(corpus, range, basis_token_sizes(corpus, all, options));
}

ComplexitySelection complexity_members(const Corpus& corpus, const ComplexityRange& range,
                                       std::span<const std::optional<std::size_t>> sizes) {
  validate(range);
  if (sizes.size() != corpus.size()) throw InputError("size list does not match the corpus");
  ComplexitySelection sel;
  // (size, file position) for ranked train samples.
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!sizes[i]) {
      ++sel.lex_failures;
      continue;
    }
    if (corpus[i].partition == Partition::kTrain) ranked.emplace_back(*sizes[i], i);
  }
  std::sort(ranked.begin(), ranked.end());
  sel.n_ranked = ranked.size();

  const auto [begin, end] = rank_bounds(range, ranked.size());
  if (begin >= end) {
    throw InputError("complexity range " + to_string(range) + " selects no train samples out of " +
                     std::to_string(ranked.size()) + "; use a wider range");
  }
  sel.size_min = ranked[begin].first;
  sel.size_max = ranked[end - 1].first;

  std::vector<bool> in_slice(corpus.size(), false);
  for (std::size_t r = begin; r < end; ++r) in_slice[ranked[r].second] = true;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& s = corpus[i];
    if (s.partition == Partition::kTrain) {
      if (in_slice[i]) sel.train_ids.push_back(s.id);
    } else if (sizes[i] && *sizes[i] >= sel.size_min && *sizes[i] <= sel.size_max) {
      (s.partition == Partition::kTest ? sel.test_ids : sel.valid_ids).push_back(s.id);
    }
  }
  return sel;
}

ElementCoverage element_coverage(const Corpus& corpus, std::span<const std::size_t> indices,
                                 std::optional<Basis> basis) {
  ElementCoverage cov;
  const auto props = kernels::compute_sample_properties(corpus, indices, basis);
  std::uint64_t all_occurrences = 0;
  for (const auto& p : props) {
    if (!p.lexed) {
      ++cov.lex_failures;
      continue;
    }
    ++cov.n_samples;
    for (const auto kind : kAllElementKinds) {
      const auto k = static_cast<std::size_t>(kind);
      const auto c = p.elements.count(kind);
      cov.occurrences[k] += c;
      all_occurrences += c;
      if (c > 0) ++cov.sample_count[k];
    }
  }
  const auto denom = static_cast<double>(indices.size());
  for (std::size_t k = 0; k < kNumElementKinds; ++k) {
    cov.sample_fraction[k] = denom > 0 ? static_cast<double>(cov.sample_count[k]) / denom : 0.0;
    cov.occurrence_fraction[k] =
        all_occurrences > 0
            ? static_cast<double>(cov.occurrences[k]) / static_cast<double>(all_occurrences)
            : 0.0;
  }
  return cov;
}

ElementCoverage element_coverage(const Corpus& corpus, std::optional<Basis> basis) {
  const auto train = corpus.partition_indices(Partition::kTrain);
  return element_coverage(corpus, train, basis);
}

nlohmann::json to_json(const ElementCoverage& coverage) {
  nlohmann::json per_kind = nlohmann::json::array();
  for (const auto kind : kAllElementKinds) {
    const auto k = static_cast<std::size_t>(kind);
    per_kind.push_back({{"element", to_string(kind)},
                        {"samples", coverage.sample_count[k]},
                        {"occurrences", coverage.occurrences[k]},
                        {"sample_fraction", coverage.sample_fraction[k]},
                        {"occurrence_fraction", coverage.occurrence_fraction[k]}});
  }
  return {{"n_samples", coverage.n_samples},
          {"lex_failures", coverage.lex_failures},
          {"elements", per_kind}};
}

std::vector<ElementKind> suggest_syntax_scenarios(const ElementCoverage& coverage, double target,
                                                  double tol, CoverageFlavor flavor) {
  const auto& fractions = flavor == CoverageFlavor::kSample ? coverage.sample_fraction
                                                            : coverage.occurrence_fraction;
  std::vector<std::pair<double, std::size_t>> hits;
  for (std::size_t k = 0; k < kNumElementKinds; ++k) {
    const double f = fractions[k];
    if (f >= target - tol && f <= target + tol) hits.emplace_back(std::abs(f - target), k);
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ElementKind> out;
  for (const auto& [gap, k] : hits) out.push_back(kAllElementKinds[k]);
  return out;
}

}  // namespace oodsim
