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

#ifndef OODSIM_EVALUATION_HPP_
#define OODSIM_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oodsim/corpus.hpp"
#include "oodsim/distribution.hpp"
#include "oodsim/elements.hpp"
#include "oodsim/predictions.hpp"
#include "oodsim/scenario.hpp"
#include "oodsim/splitter.hpp"

namespace oodsim {

inline constexpr int kReportFormatVersion = 1;

// Token texts of `code`, or nullopt when it does not lex.
std::optional<std::vector<std::string>> token_texts(std::string_view code);

// 1 iff both sides lex to the same token texts. A prediction that fails to
// lex scores 0.
int exact_match(std::string_view prediction, std::string_view target);

// Pooled corpus BLEU-4 over pre-tokenized pairs. Add-one smoothing applies to
// the 2..4-gram precisions; brevity penalty exp(1 - r/c) when c <= r.
// Throws InputError on an empty or misaligned set.
double corpus_bleu(std::span<const std::vector<std::string>> hypotheses,
                   std::span<const std::vector<std::string>> references);
// Lexes both sides; predictions that fail to lex count as empty.
double corpus_bleu(std::span<const std::string> predictions,
                   std::span<const std::string> references);

// scenario_em / baseline_em, or nullopt when baseline_em is 0.
std::optional<double> relative_em(double scenario_em, double baseline_em);

enum class Rarity { kUnseen, kRare, kCommon };
std::string_view to_string(Rarity rarity);
Rarity parse_rarity(std::string_view name);

struct FrequencyOptions {
  double rare_threshold = 0.02;
  // Count samples containing the element instead of pooled occurrences.
  bool per_sample = false;
};

struct ElementFrequency {
  ElementKind kind = ElementKind::kElse;
  std::uint64_t gen_count = 0;
  std::uint64_t gt_count = 0;
  std::optional<double> ratio;  // null when gt_count is 0
  Rarity rarity = Rarity::kCommon;
  double train_sample_fraction = 0.0;
};

Rarity classify_rarity(double train_sample_fraction, double rare_threshold);

// Throws InputError when kinds is empty or the sides differ in length.
std::vector<ElementFrequency> element_generation_frequency(
    std::span<const std::string> predictions, std::span<const std::string> references,
    std::span<const ElementKind> kinds, const ElementCoverage& train_coverage,
    const FrequencyOptions& options = {});

// -(1/T) * sum(logprobs), or the plain negated sum when normalize is false.
double sample_nll(std::span<const double> logprobs, bool normalize = true);

struct NllGroupInput {
  std::string label;
  std::vector<std::optional<std::vector<double>>> logprobs;
};

struct NllGroup {
  std::string label;
  std::vector<double> nll;
  std::size_t skipped = 0;
  std::vector<std::uint64_t> counts;
  std::vector<double> density;
};

struct NllHistogram {
  std::vector<double> edges;  // bins + 1 shared edges
  std::vector<NllGroup> groups;
};

// Equal-width bins over the combined range of all groups. Samples without
// logprobs are skipped and counted; InputError when nothing remains or a
// group with samples ends up empty.
NllHistogram nll_histogram(const std::vector<NllGroupInput>& groups, int bins = 30,
                           bool normalize = true);

struct EvalOptions {
  std::vector<ElementKind> kinds;  // empty means every kind
  FrequencyOptions frequency;
  int bins = 30;
  bool normalize_nll = true;
};

struct EvalDiagnostics {
  std::size_t prediction_lex_failures = 0;
  std::size_t reference_lex_failures = 0;
  std::size_t baseline_lex_failures = 0;
  std::size_t ignored_prediction_ids = 0;
  std::vector<std::string> notes;
};

struct EvalReport {
  std::string scenario;
  Dimension dimension = Dimension::kComplexity;
  std::size_t n_evaluated = 0;
  double em = 0.0;
  double bleu = 0.0;
  std::optional<double> baseline_em;
  std::optional<double> baseline_bleu;
  std::optional<double> relative_em;
  std::vector<ElementFrequency> elements;
  std::optional<NllHistogram> nll;
  EvalDiagnostics diagnostics;
  nlohmann::json config = nlohmann::json::object();
};

// Scores predictions over manifest.ood_test_ids against the corpus targets.
// Rarity uses target-side coverage of the manifest's training ids. Throws
// InputError listing ids missing from either prediction set.
EvalReport evaluate_scenario(const SplitManifest& manifest, const Corpus& corpus,
                             const PredictionSet& predictions,
                             const PredictionSet* baseline = nullptr,
                             const EvalOptions& options = {});

// Mean relative EM per dimension over reports that carry one.
std::map<Dimension, double> mean_relative_em_by_dimension(std::span<const EvalReport> reports);

}  // namespace oodsim

#endif  // OODSIM_EVALUATION_HPP_
