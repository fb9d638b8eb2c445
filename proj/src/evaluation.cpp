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

#include "oodsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "oodsim/error.hpp"
#include "oodsim/kernels/sample_properties.hpp"
#include "oodsim/lexer.hpp"

namespace oodsim {

std::optional<std::vector<std::string>> token_texts(std::string_view code) {
  try {
    const auto tokens = tokenize(code);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.text);
    return out;
  } catch (const LexError&) {
    return std::nullopt;
  }
}

int exact_match(std::string_view prediction, std::string_view target) {
  const auto p = token_texts(prediction);
  const auto t = token_texts(target);
  return (p && t && *p == *t) ? 1 : 0;
}

namespace {

constexpr int kMaxOrder = 4;

struct BleuCounts {
  std::array<std::uint64_t, kMaxOrder> matches{};
  std::array<std::uint64_t, kMaxOrder> totals{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
};

// Length-prefixed join keeps keys unambiguous whatever the token text holds.
std::string ngram_key(const std::vector<std::string>& tokens, std::size_t start, int n) {
  std::string key;
  for (int k = 0; k < n; ++k) {
    const auto& t = tokens[start + static_cast<std::size_t>(k)];
    key += std::to_string(t.size());
    key += ':';
    key += t;
  }
  return key;
}

BleuCounts sentence_counts(const std::vector<std::string>& hyp,
                           const std::vector<std::string>& ref) {
  BleuCounts c;
  c.hyp_len = hyp.size();
  c.ref_len = ref.size();
  for (int n = 1; n <= kMaxOrder; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (hyp.size() < un) continue;
    std::unordered_map<std::string, std::uint64_t> ref_counts;
    for (std::size_t i = 0; i + un <= ref.size(); ++i) ++ref_counts[ngram_key(ref, i, n)];
    std::unordered_map<std::string, std::uint64_t> hyp_counts;
    for (std::size_t i = 0; i + un <= hyp.size(); ++i) ++hyp_counts[ngram_key(hyp, i, n)];
    std::uint64_t matched = 0;
    for (const auto& [key, count] : hyp_counts) {
      const auto it = ref_counts.find(key);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    c.matches[n - 1] = matched;
    c.totals[n - 1] = hyp.size() - un + 1;
  }
  return c;
}

}  // namespace

double corpus_bleu(std::span<const std::vector<std::string>> hypotheses,
                   std::span<const std::vector<std::string>> references) {
  if (hypotheses.empty()) throw InputError("BLEU needs at least one prediction");
  if (hypotheses.size() != references.size()) {
    throw InputError("BLEU got " + std::to_string(hypotheses.size()) + " predictions but " +
                     std::to_string(references.size()) + " references");
  }
  const auto n = static_cast<std::ptrdiff_t>(hypotheses.size());
  std::vector<BleuCounts> per(hypotheses.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    per[static_cast<std::size_t>(i)] =
        sentence_counts(hypotheses[static_cast<std::size_t>(i)],
                        references[static_cast<std::size_t>(i)]);
  }
  BleuCounts total;
  for (const auto& c : per) {
    for (int k = 0; k < kMaxOrder; ++k) {
      total.matches[k] += c.matches[k];
      total.totals[k] += c.totals[k];
    }
    total.hyp_len += c.hyp_len;
    total.ref_len += c.ref_len;
  }
  if (total.hyp_len == 0 || total.matches[0] == 0) return 0.0;
  double log_sum = std::log(static_cast<double>(total.matches[0]) /
                            static_cast<double>(total.totals[0]));
  for (int k = 1; k < kMaxOrder; ++k) {
    log_sum += std::log(static_cast<double>(total.matches[k] + 1) /
                        static_cast<double>(total.totals[k] + 1));
  }
  const double c = static_cast<double>(total.hyp_len);
  const double r = static_cast<double>(total.ref_len);
  const double log_bp = c > r ? 0.0 : 1.0 - r / c;
  return std::exp(log_bp + log_sum / kMaxOrder);
}

double corpus_bleu(std::span<const std::string> predictions,
                   std::span<const std::string> references) {
  if (predictions.size() != references.size()) {
    throw InputError("BLEU got " + std::to_string(predictions.size()) + " predictions but " +
                     std::to_string(references.size()) + " references");
  }
  std::vector<std::vector<std::string>> hyps(predictions.size());
  std::vector<std::vector<std::string>> refs(references.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    hyps[i] = token_texts(predictions[i]).value_or(std::vector<std::string>{});
    refs[i] = token_texts(references[i]).value_or(std::vector<std::string>{});
  }
  return corpus_bleu(std::span<const std::vector<std::string>>(hyps),
                     std::span<const std::vector<std::string>>(refs));
}

std::optional<double> relative_em(double scenario_em, double baseline_em) {
  if (baseline_em == 0.0) return std::nullopt;
  return scenario_em / baseline_em;
}

std::string_view to_string(Rarity rarity) {
  switch (rarity) {
    case Rarity::kUnseen: return "unseen";
    case Rarity::kRare: return "rare";
    case Rarity::kCommon: return "common";
  }
  return "unknown";
}

Rarity parse_rarity(std::string_view name) {
  if (name == "unseen") return Rarity::kUnseen;
  if (name == "rare") return Rarity::kRare;
  if (name == "common") return Rarity::kCommon;
  throw InputError("unknown rarity \"" + std::string(name) + "\"");
}

Rarity classify_rarity(double train_sample_fraction, double rare_threshold) {
  if (train_sample_fraction <= 0.0) return Rarity::kUnseen;
  if (train_sample_fraction <= rare_threshold) return Rarity::kRare;
  return Rarity::kCommon;
}

namespace {

std::vector<kernels::SampleProperties> text_properties(std::span<const std::string> texts) {
  std::vector<std::string_view> views(texts.begin(), texts.end());
  return kernels::compute_text_properties(views);
}

std::vector<ElementFrequency> frequency_from_properties(
    const std::vector<kernels::SampleProperties>& preds,
    const std::vector<kernels::SampleProperties>& refs, std::span<const ElementKind> kinds,
    const ElementCoverage& train_coverage, const FrequencyOptions& options) {
  std::vector<ElementFrequency> out;
  for (const auto kind : kinds) {
    ElementFrequency f;
    f.kind = kind;
    const auto tally = [&](const std::vector<kernels::SampleProperties>& side) {
      std::uint64_t n = 0;
      for (const auto& p : side) {
        if (!p.lexed) continue;
        const auto c = p.elements.count(kind);
        n += options.per_sample ? (c > 0 ? 1 : 0) : c;
      }
      return n;
    };
    f.gen_count = tally(preds);
    f.gt_count = tally(refs);
    if (f.gt_count > 0) {
      f.ratio = static_cast<double>(f.gen_count) / static_cast<double>(f.gt_count);
    }
    f.train_sample_fraction = train_coverage.sample_fraction[static_cast<std::size_t>(kind)];
    f.rarity = classify_rarity(f.train_sample_fraction, options.rare_threshold);
    out.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<ElementFrequency> element_generation_frequency(
    std::span<const std::string> predictions, std::span<const std::string> references,
    std::span<const ElementKind> kinds, const ElementCoverage& train_coverage,
    const FrequencyOptions& options) {
  if (kinds.empty()) throw InputError("element frequency needs at least one element kind");
  if (predictions.size() != references.size()) {
    throw InputError("element frequency got misaligned prediction and reference lists");
  }
  return frequency_from_properties(text_properties(predictions), text_properties(references),
                                   kinds, train_coverage, options);
}

double sample_nll(std::span<const double> logprobs, bool normalize) {
  if (logprobs.empty()) throw InputError("NLL needs at least one token logprob");
  double sum = 0.0;
  for (const double v : logprobs) sum += v;
  return normalize ? -sum / static_cast<double>(logprobs.size()) : -sum;
}

NllHistogram nll_histogram(const std::vector<NllGroupInput>& groups, int bins, bool normalize) {
  if (bins < 1) throw InputError("histogram needs at least one bin");
  if (groups.empty()) throw InputError("histogram needs at least one group");
  NllHistogram h;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& in : groups) {
    NllGroup g;
    g.label = in.label;
    for (const auto& lp : in.logprobs) {
      if (!lp) {
        ++g.skipped;
        continue;
      }
      const double v = sample_nll(*lp, normalize);
      g.nll.push_back(v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    h.groups.push_back(std::move(g));
  }
  if (!(lo <= hi)) throw InputError("no sample carries token logprobs");
  for (const auto& g : h.groups) {
    if (g.nll.empty()) throw InputError("group \"" + g.label + "\" has no token logprobs");
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.edges.back() = hi;
  for (auto& g : h.groups) {
    g.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const double v : g.nll) {
      auto b = static_cast<std::ptrdiff_t>(std::floor((v - lo) / width));
      b = std::clamp<std::ptrdiff_t>(b, 0, bins - 1);
      ++g.counts[static_cast<std::size_t>(b)];
    }
    const double n = static_cast<double>(g.nll.size());
    g.density.resize(g.counts.size());
    for (std::size_t b = 0; b < g.counts.size(); ++b) {
      g.density[b] = static_cast<double>(g.counts[b]) / (n * (h.edges[b + 1] - h.edges[b]));
    }
  }
  return h;
}

namespace {

std::vector<const Prediction*> align(const PredictionSet& set,
                                     const std::vector<std::string>& ids, std::string_view what) {
  std::vector<const Prediction*> out;
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    const auto* p = set.find(id);
    if (p == nullptr) missing.push_back(id);
    out.push_back(p);
  }
  if (!missing.empty()) {
    std::string msg = std::string(what) + " lack " + std::to_string(missing.size()) +
                      " OOD test id(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(missing.size(), 20); ++k) {
      msg += " " + missing[k];
    }
    if (missing.size() > 20) msg += " ...";
    throw InputError(msg);
  }
  return out;
}

struct SideScores {
  double em = 0.0;
  double bleu = 0.0;
  std::size_t lex_failures = 0;
  std::vector<kernels::SampleProperties> props;
};

SideScores score_side(const std::vector<const Prediction*>& preds,
                      const std::vector<std::optional<std::vector<std::string>>>& ref_tokens) {
  const auto n = preds.size();
  std::vector<std::optional<std::vector<std::string>>> hyp_tokens(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto k = static_cast<std::size_t>(i);
    hyp_tokens[k] = token_texts(preds[k]->text);
  }
  SideScores s;
  std::size_t matches = 0;
  std::vector<std::vector<std::string>> hyps(n);
  std::vector<std::vector<std::string>> refs(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!hyp_tokens[i]) ++s.lex_failures;
    if (hyp_tokens[i] && ref_tokens[i] && *hyp_tokens[i] == *ref_tokens[i]) ++matches;
    if (hyp_tokens[i]) hyps[i] = std::move(*hyp_tokens[i]);
    if (ref_tokens[i]) refs[i] = *ref_tokens[i];
  }
  s.em = static_cast<double>(matches) / static_cast<double>(n);
  s.bleu = corpus_bleu(std::span<const std::vector<std::string>>(hyps),
                       std::span<const std::vector<std::string>>(refs));
  std::vector<std::string_view> texts;
  texts.reserve(n);
  for (const auto* p : preds) texts.push_back(p->text);
  s.props = kernels::compute_text_properties(texts);
  return s;
}

}  // namespace

EvalReport evaluate_scenario(const SplitManifest& manifest, const Corpus& corpus,
                             const PredictionSet& predictions, const PredictionSet* baseline,
                             const EvalOptions& options) {
  const auto& ids = manifest.ood_test_ids;
  if (ids.empty()) throw InputError("manifest has no OOD test ids");
  if (manifest.task != corpus.task()) {
    throw InputError("manifest task " + std::string(to_string(manifest.task)) +
                     " does not match corpus task " + std::string(to_string(corpus.task())));
  }
  EvalReport r;
  r.scenario = manifest.scenario.name;
  r.dimension = manifest.scenario.dimension;
  r.n_evaluated = ids.size();

  std::vector<std::string> targets;
  targets.reserve(ids.size());
  for (const auto& id : ids) targets.push_back(corpus.at(id).target);
  const auto preds = align(predictions, ids, "predictions");

  std::vector<std::optional<std::vector<std::string>>> ref_tokens(ids.size());
  const auto sn = static_cast<std::ptrdiff_t>(ids.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ref_tokens[k] = token_texts(targets[k]);
  }
  for (const auto& t : ref_tokens) r.diagnostics.reference_lex_failures += t ? 0 : 1;

  const auto main = score_side(preds, ref_tokens);
  r.em = main.em;
  r.bleu = main.bleu;
  r.diagnostics.prediction_lex_failures = main.lex_failures;
  r.diagnostics.ignored_prediction_ids = predictions.size() - ids.size();
  if (main.lex_failures > 0) {
    r.diagnostics.notes.push_back(std::to_string(main.lex_failures) +
                                  " prediction(s) failed to lex and scored 0");
  }

  std::vector<const Prediction*> base_preds;
  if (baseline != nullptr) {
    base_preds = align(*baseline, ids, "baseline predictions");
    const auto base = score_side(base_preds, ref_tokens);
    r.baseline_em = base.em;
    r.baseline_bleu = base.bleu;
    r.diagnostics.baseline_lex_failures = base.lex_failures;
    r.relative_em = relative_em(r.em, base.em);
    if (!r.relative_em) r.diagnostics.notes.push_back("baseline EM is 0; relative EM undefined");
  }

  std::vector<std::size_t> train_idx;
  train_idx.reserve(manifest.train_ids.size());
  for (const auto& id : manifest.train_ids) {
    const auto pos = corpus.find(id);
    if (!pos) throw InputError("manifest train id \"" + id + "\" is not in the corpus");
    train_idx.push_back(*pos);
  }
  const auto train_cov = element_coverage(corpus, train_idx, Basis::kTarget);
  std::vector<std::string_view> target_views(targets.begin(), targets.end());
  const auto ref_props = kernels::compute_text_properties(target_views);
  std::vector<ElementKind> kinds = options.kinds;
  if (kinds.empty()) kinds.assign(kAllElementKinds.begin(), kAllElementKinds.end());
  r.elements = frequency_from_properties(main.props, ref_props, kinds, train_cov,
                                         options.frequency);
  for (const auto& f : r.elements) {
    if (!f.ratio) {
      r.diagnostics.notes.push_back("element " + std::string(to_string(f.kind)) +
                                    " never occurs in the references; ratio undefined");
    }
  }

  std::vector<NllGroupInput> groups;
  const auto collect = [&](const std::string& label, const std::vector<const Prediction*>& side) {
    NllGroupInput g{label, {}};
    bool any = false;
    for (const auto* p : side) {
      g.logprobs.push_back(p->token_logprobs);
      any |= p->token_logprobs.has_value();
    }
    if (any) {
      groups.push_back(std::move(g));
    } else {
      r.diagnostics.notes.push_back(label + " predictions carry no token logprobs");
    }
  };
  collect("scenario", preds);
  if (baseline != nullptr) collect("baseline", base_preds);
  if (!groups.empty()) r.nll = nll_histogram(groups, options.bins, options.normalize_nll);
  return r;
}

std::map<Dimension, double> mean_relative_em_by_dimension(std::span<const EvalReport> reports) {
  std::map<Dimension, std::pair<double, std::size_t>> acc;
  for (const auto& r : reports) {
    if (!r.relative_em) continue;
    auto& [sum, n] = acc[r.dimension];
    sum += *r.relative_em;
    ++n;
  }
  std::map<Dimension, double> out;
  for (const auto& [dim, sn] : acc) out[dim] = sn.first / static_cast<double>(sn.second);
  return out;
}

}  // namespace oodsim
