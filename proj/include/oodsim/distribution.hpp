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

#ifndef OODSIM_DISTRIBUTION_HPP_
#define OODSIM_DISTRIBUTION_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "oodsim/corpus.hpp"
#include "oodsim/elements.hpp"

namespace oodsim {

// Percentile-rank range [lo_pct, hi_pct] over train basis token sizes.
struct ComplexityRange {
  double lo_pct = 0.0;
  double hi_pct = 100.0;

  bool operator==(const ComplexityRange&) const = default;
};

// Throws InputError unless 0 <= lo < hi <= 100.
void validate(const ComplexityRange& range);

// "lo:hi", e.g. "97:100".
ComplexityRange parse_complexity_range(std::string_view text);
std::string to_string(const ComplexityRange& range);

enum class RegionLabel { kInterpolation, kExtrapolation };
std::string_view to_string(RegionLabel label);

// Ranges touching either tail are extrapolation; the rest interpolation.
RegionLabel region_label(const ComplexityRange& range);

// [0,3], [24,27], [48,51], [72,75], [97,100].
std::vector<ComplexityRange> default_complexity_scenarios();

// Externally computed token sizes (e.g. subword counts), keyed by sample id.
using TokenSizeTable = std::unordered_map<std::string, std::size_t>;

// {"id": str, "size": int} per line.
TokenSizeTable load_token_sizes(const std::filesystem::path& path);

struct SizeOptions {
  std::optional<Basis> basis;
  // When set, sizes come from the table (every looked-up id must be present)
  // instead of the lexer.
  const TokenSizeTable* sizes = nullptr;
  // Lex failures throw instead of being counted and skipped.
  bool strict = false;
};

// Token size per index; nullopt for samples whose basis text does not lex.
std::vector<std::optional<std::size_t>> basis_token_sizes(const Corpus& corpus,
                                                          std::span<const std::size_t> indices,
                                                          const SizeOptions& options);

struct ComplexitySelection {
  // Value interval spanned by the rank-selected train samples.
  std::size_t size_min = 0;
  std::size_t size_max = 0;
  // File order. train_ids is the rank slice; valid/test are value matches.
  std::vector<std::string> train_ids;
  std::vector<std::string> valid_ids;
  std::vector<std::string> test_ids;
  std::size_t n_ranked = 0;      // train samples with a size
  std::size_t lex_failures = 0;  // train + valid + test
};

// Sorts train samples by (token size, file order) and takes ranks
// floor(lo*N/100) .. floor(hi*N/100)-1. Throws InputError on an empty slice.
ComplexitySelection complexity_members(const Corpus& corpus, const ComplexityRange& range,
                                       const SizeOptions& options = {});

// Same, from basis_token_sizes over the whole corpus.
ComplexitySelection complexity_members(const Corpus& corpus, const ComplexityRange& range,
                                       std::span<const std::optional<std::size_t>> sizes);

// Rank bounds [begin, end) of a range over n ranked samples.
std::pair<std::size_t, std::size_t> rank_bounds(const ComplexityRange& range, std::size_t n);

struct ElementCoverage {
  std::size_t n_samples = 0;  // samples that lexed
  std::size_t lex_failures = 0;
  std::array<std::size_t, kNumElementKinds> sample_count{};
  std::array<std::uint64_t, kNumElementKinds> occurrences{};
  std::array<double, kNumElementKinds> sample_fraction{};
  std::array<double, kNumElementKinds> occurrence_fraction{};

  double samples_with(ElementKind kind) const {
    return sample_fraction[static_cast<std::size_t>(kind)];
  }
};

// Coverage over the given samples' basis texts. Fractions are relative to
// the number of samples requested (lex failures count as containing nothing).
ElementCoverage element_coverage(const Corpus& corpus, std::span<const std::size_t> indices,
                                 std::optional<Basis> basis = std::nullopt);

// Coverage over the train partition.
ElementCoverage element_coverage(const Corpus& corpus, std::optional<Basis> basis = std::nullopt);

nlohmann::json to_json(const ElementCoverage& coverage);

enum class CoverageFlavor { kSample, kOccurrence };

// Kinds whose fraction lies in [target - tol, target + tol], closest first,
// ties in taxonomy order.
std::vector<ElementKind> suggest_syntax_scenarios(const ElementCoverage& coverage,
                                                  double target = 0.03, double tol = 0.01,
                                                  CoverageFlavor flavor = CoverageFlavor::kSample);

}  // namespace oodsim

#endif  // OODSIM_DISTRIBUTION_HPP_
