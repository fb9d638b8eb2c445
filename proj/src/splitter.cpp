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

#include "oodsim/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "oodsim/error.hpp"
#include "oodsim/kernels/sample_properties.hpp"
#include "oodsim/rng.hpp"

namespace oodsim {

PropertyPredicate::PropertyPredicate(
    const Corpus& corpus, std::vector<bool> member, std::size_t lex_failures,
    std::optional<std::pair<std::size_t, std::size_t>> size_interval)
    : corpus_(&corpus),
      member_(std::move(member)),
      lex_failures_(lex_failures),
      size_interval_(size_interval) {}

bool PropertyPredicate::operator()(std::string_view id) const {
  const auto pos = corpus_->find(id);
  if (!pos) throw InputError("unknown sample id \"" + std::string(id) + "\"");
  return member_[*pos];
}

namespace {

std::vector<std::size_t> all_indices(const Corpus& corpus) {
  std::vector<std::size_t> all(corpus.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

PropertyPredicate complexity_predicate(const ComplexityRange& range, const Corpus& corpus,
                                       std::optional<Basis> basis, const SplitOptions& options) {
  const SizeOptions size_opts{basis, options.sizes, options.strict};
  const auto all = all_indices(corpus);
  const auto sizes = basis_token_sizes(corpus, all, size_opts);
  const auto sel = complexity_members(corpus, range, sizes);
  std::vector<bool> member(corpus.size(), false);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    member[i] = sizes[i] && *sizes[i] >= sel.size_min && *sizes[i] <= sel.size_max;
  }
  return PropertyPredicate(corpus, std::move(member), sel.lex_failures,
                           std::make_pair(sel.size_min, sel.size_max));
}

PropertyPredicate syntax_predicate(const std::vector<ElementKind>& kinds, const Corpus& corpus,
                                   std::optional<Basis> basis, const SplitOptions& options) {
  const auto all = all_indices(corpus);
  const auto props = kernels::compute_sample_properties(corpus, all, basis);
  std::vector<bool> member(corpus.size(), false);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!props[i].lexed) {
      if (options.strict) {
        throw InputError("sample \"" + corpus[i].id + "\": " + props[i].lex_error);
      }
      ++failures;
      continue;
    }
    member[i] = std::any_of(kinds.begin(), kinds.end(),
                            [&](ElementKind k) { return props[i].elements.contains(k); });
  }
  return PropertyPredicate(corpus, std::move(member), failures, std::nullopt);
}

PropertyPredicate semantic_predicate(const std::vector<int>& cluster_ids, const Corpus& corpus,
                                     const ClusterModel* clusters) {
  if (clusters == nullptr) throw InputError("semantic scenario needs a cluster model");
  std::set<int> wanted;
  for (const int c : cluster_ids) {
    if (c < 0 || c >= clusters->k()) {
      throw InputError("cluster id " + std::to_string(c) + " outside [0, " +
                       std::to_string(clusters->k()) + ")");
    }
    wanted.insert(c);
  }
  std::vector<bool> member(corpus.size(), false);
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto c = clusters->cluster_of(corpus[i].id);
    if (!c) {
      if (corpus[i].partition != Partition::kValid) missing.push_back(corpus[i].id);
      continue;
    }
    member[i] = wanted.count(*c) > 0;
  }
  if (!missing.empty()) {
    std::string msg = "cluster model has no assignment for " + std::to_string(missing.size()) +
                      " train/test sample(s):";
    for (std::size_t k = 0; k < std::min<std::size_t>(missing.size(), 10); ++k) {
      msg += " " + missing[k];
    }
    throw InputError(msg);
  }
  return PropertyPredicate(corpus, std::move(member), 0, std::nullopt);
}

}  // namespace

PropertyPredicate property_predicate(const ScenarioSpec& spec, const Corpus& corpus,
                                     const ClusterModel* clusters, const SplitOptions& options) {
  validate(spec);
  switch (spec.dimension) {
    case Dimension::kComplexity:
      return complexity_predicate(std::get<ComplexityRange>(spec.params), corpus, spec.basis,
                                  options);
    case Dimension::kSyntax:
      return syntax_predicate(std::get<std::vector<ElementKind>>(spec.params), corpus, spec.basis,
                              options);
    case Dimension::kSemantics:
      return semantic_predicate(std::get<std::vector<int>>(spec.params), corpus, clusters);
  }
  throw InputError("unknown dimension");
}

std::size_t mask_count(double mask_fraction, std::size_t count) {
  const auto m = static_cast<std::size_t>(
      std::floor(mask_fraction * static_cast<double>(count) + 0.5));
  return std::min(m, count);
}

std::vector<std::string> select_masked(std::vector<std::string> candidates, double mask_fraction,
                                       std::uint64_t seed) {
  std::sort(candidates.begin(), candidates.end());
  const auto m = mask_count(mask_fraction, candidates.size());
  if (m == candidates.size()) return candidates;
  deterministic_shuffle(candidates, seed);
  candidates.resize(m);
  return candidates;
}

SplitManifest build_split(const Corpus& corpus, const ScenarioSpec& spec,
                          const ClusterModel* clusters, const SplitOptions& options) {
  const auto pred = property_predicate(spec, corpus, clusters, options);

  SplitManifest out;
  out.task = corpus.task();
  out.basis = spec.basis.value_or(default_basis(corpus.task()));
  out.scenario = spec;
  if (out.scenario.name.empty()) out.scenario.name = default_scenario_name(spec);

  std::vector<std::string> candidates;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& s = corpus[i];
    switch (s.partition) {
      case Partition::kTrain:
        ++out.stats.n_train;
        if (pred.at(i)) candidates.push_back(s.id);
        break;
      case Partition::kValid:
        ++out.stats.n_valid;
        if (options.filter_valid && pred.at(i)) {
          ++out.stats.n_valid_dropped;
        } else {
          out.valid_ids.push_back(s.id);
        }
        break;
      case Partition::kTest:
        ++out.stats.n_test;
        if (pred.at(i)) out.ood_test_ids.push_back(s.id);
        break;
    }
  }
  if (out.ood_test_ids.empty()) {
    throw InputError("scenario " + out.scenario.name + " selects no test samples");
  }
  if (candidates.empty()) {
    out.warnings.push_back("no train sample has the property; training set is unchanged");
  }

  const auto masked = select_masked(candidates, spec.mask_fraction, spec.seed);
  const std::set<std::string> masked_set(masked.begin(), masked.end());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& s = corpus[i];
    if (s.partition != Partition::kTrain) continue;
    if (masked_set.count(s.id)) {
      out.masked_train_ids.push_back(s.id);
      continue;
    }
    out.train_ids.push_back(s.id);
    if (pred.at(i)) out.kept_property_train_ids.push_back(s.id);
  }

  auto& st = out.stats;
  st.n_candidates = candidates.size();
  st.n_masked = out.masked_train_ids.size();
  st.n_kept_train = out.train_ids.size();
  st.n_ood_test = out.ood_test_ids.size();
  st.lex_failures = pred.lex_failures();
  st.rejected_train_fraction =
      st.n_train > 0 ? static_cast<double>(st.n_masked) / static_cast<double>(st.n_train) : 0.0;
  st.size_interval = pred.size_interval();
  if (const auto* r = std::get_if<ComplexityRange>(&spec.params)) st.region = region_label(*r);
  return out;
}

namespace {

nlohmann::json stats_json(const SplitStats& st) {
  nlohmann::json j = {{"n_train", st.n_train},
                      {"n_valid", st.n_valid},
                      {"n_test", st.n_test},
                      {"n_candidates", st.n_candidates},
                      {"n_masked", st.n_masked},
                      {"n_kept_train", st.n_kept_train},
                      {"n_ood_test", st.n_ood_test},
                      {"n_valid_dropped", st.n_valid_dropped},
                      {"lex_failures", st.lex_failures},
                      {"rejected_train_fraction", st.rejected_train_fraction}};
  j["region"] = st.region ? nlohmann::json(to_string(*st.region)) : nlohmann::json(nullptr);
  j["size_interval"] = st.size_interval
                           ? nlohmann::json::array({st.size_interval->first,
                                                    st.size_interval->second})
                           : nlohmann::json(nullptr);
  return j;
}

SplitStats stats_from_json(const nlohmann::json& j) {
  SplitStats st;
  st.n_train = j.at("n_train").get<std::size_t>();
  st.n_valid = j.at("n_valid").get<std::size_t>();
  st.n_test = j.at("n_test").get<std::size_t>();
  st.n_candidates = j.at("n_candidates").get<std::size_t>();
  st.n_masked = j.at("n_masked").get<std::size_t>();
  st.n_kept_train = j.at("n_kept_train").get<std::size_t>();
  st.n_ood_test = j.at("n_ood_test").get<std::size_t>();
  st.n_valid_dropped = j.at("n_valid_dropped").get<std::size_t>();
  st.lex_failures = j.at("lex_failures").get<std::size_t>();
  st.rejected_train_fraction = j.at("rejected_train_fraction").get<double>();
  if (!j.at("region").is_null()) {
    const auto r = j["region"].get<std::string>();
    if (r == "extrapolation") {
      st.region = RegionLabel::kExtrapolation;
    } else if (r == "interpolation") {
      st.region = RegionLabel::kInterpolation;
    } else {
      throw InputError("unknown region label \"" + r + "\"");
    }
  }
  if (!j.at("size_interval").is_null()) {
    st.size_interval = {j["size_interval"].at(0).get<std::size_t>(),
                        j["size_interval"].at(1).get<std::size_t>()};
  }
  return st;
}

void write_lines(const std::filesystem::path& path, const Corpus& corpus,
                 const std::vector<std::string>& ids) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& id : ids) {
    const auto& s = corpus.at(id);
    out << (s.raw_line.empty() ? serialize_sample(s) : s.raw_line) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

nlohmann::json to_json(const SplitManifest& m) {
  return {{"format_version", kManifestFormatVersion},
          {"task", to_string(m.task)},
          {"basis", to_string(m.basis)},
          {"scenario", to_json(m.scenario)},
          {"config", m.config},
          {"stats", stats_json(m.stats)},
          {"warnings", m.warnings},
          {"train_ids", m.train_ids},
          {"masked_train_ids", m.masked_train_ids},
          {"kept_property_train_ids", m.kept_property_train_ids},
          {"valid_ids", m.valid_ids},
          {"ood_test_ids", m.ood_test_ids}};
}

SplitManifest manifest_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kManifestFormatVersion) {
      throw InputError("unsupported manifest format_version " + std::to_string(version));
    }
    SplitManifest m;
    m.task = parse_task(j.at("task").get<std::string>());
    m.basis = parse_basis(j.at("basis").get<std::string>());
    m.scenario = scenario_from_json(j.at("scenario"));
    m.config = j.at("config");
    m.stats = stats_from_json(j.at("stats"));
    m.warnings = j.at("warnings").get<std::vector<std::string>>();
    m.train_ids = j.at("train_ids").get<std::vector<std::string>>();
    m.masked_train_ids = j.at("masked_train_ids").get<std::vector<std::string>>();
    m.kept_property_train_ids = j.at("kept_property_train_ids").get<std::vector<std::string>>();
    m.valid_ids = j.at("valid_ids").get<std::vector<std::string>>();
    m.ood_test_ids = j.at("ood_test_ids").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

SplitManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  try {
    return manifest_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

EmittedFiles emit_training_files(const SplitManifest& manifest, const Corpus& corpus,
                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  EmittedFiles files{out_dir / "train.jsonl", out_dir / "valid.jsonl",
                     out_dir / "test_ood.jsonl", out_dir / "manifest.json"};
  write_lines(files.train, corpus, manifest.train_ids);
  write_lines(files.valid, corpus, manifest.valid_ids);
  write_lines(files.test_ood, corpus, manifest.ood_test_ids);
  std::ofstream out(files.manifest);
  if (!out) throw std::runtime_error("cannot write " + files.manifest.string());
  out << to_json(manifest).dump(2) << '\n';
  return files;
}

}  // namespace oodsim
