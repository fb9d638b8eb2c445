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

#include "oodsim/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "oodsim/cluster_model.hpp"
#include "oodsim/corpus.hpp"
#include "oodsim/corpus_stats.hpp"
#include "oodsim/distribution.hpp"
#include "oodsim/embeddings.hpp"
#include "oodsim/error.hpp"
#include "oodsim/evaluation.hpp"
#include "oodsim/json_config.hpp"
#include "oodsim/kmeans.hpp"
#include "oodsim/pca.hpp"
#include "oodsim/report.hpp"
#include "oodsim/rng.hpp"
#include "oodsim/splitter.hpp"

namespace oodsim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

inline constexpr int kAnalysisFormatVersion = 1;
inline constexpr int kSplitIndexFormatVersion = 1;
inline constexpr int kSemanticPresetSize = 5;

struct GlobalOptions {
  std::string task;
  std::string basis;
  std::uint64_t seed = 0;
};

struct AnalyzeOptions {
  std::string corpus;
  std::string out;
  std::string sizes;
  double coverage = 0.03;
  double tol = 0.01;
  std::string flavor = "sample";
};

struct ClusterOptions {
  std::string corpus;
  std::string embeddings;
  std::string out = "cluster_model.json";
  std::string k = "35";
  int k_min = 2;
  int k_max = 50;
  int pca_dim = 50;
  double min_explained = 0.80;
  bool pca_train_only = false;
  int max_iter = 300;
  double tol = 1e-6;
};

struct SplitCliOptions {
  std::string corpus;
  std::string dimension;
  std::string out = "splits";
  std::string name;
  std::vector<std::string> ranges;
  std::vector<std::string> elements;
  std::vector<int> clusters;
  std::string cluster_model;
  std::string sizes;
  double mask_fraction = 1.0;
  bool preset = false;
  bool strict = false;
  bool filter_valid = false;
};

struct EvalCliOptions {
  std::string corpus;
  std::vector<std::string> manifests;
  std::string splits;
  std::vector<std::string> predictions;
  std::vector<std::string> baselines;
  std::string out = "eval";
  std::vector<std::string> kinds;
  double rare_threshold = 0.02;
  int bins = 30;
  bool per_sample = false;
  bool unnormalized_nll = false;
};

struct ReportOptions {
  std::vector<std::string> inputs;
  std::string out = "report";
};

TaskKind require_task(const GlobalOptions& g) {
  if (g.task.empty()) throw InputError("--task is required (text2code, refinement or translation)");
  return parse_task(g.task);
}

std::optional<Basis> basis_override(const GlobalOptions& g) {
  if (g.basis.empty()) return std::nullopt;
  return parse_basis(g.basis);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw InputError(std::string(flag) + " is required");
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json config_of(const CLI::App& app) { return resolved_options(&app); }

int cmd_analyze(const CLI::App& app, const GlobalOptions& g, const AnalyzeOptions& o,
                std::ostream& out) {
  const auto task = require_task(g);
  require(o.corpus, "--corpus");
  const auto basis = basis_override(g);
  const auto corpus = load_corpus(o.corpus, task);
  if (o.flavor != "sample" && o.flavor != "occurrence") {
    throw InputError("--flavor must be sample or occurrence");
  }
  std::optional<TokenSizeTable> sizes;
  if (!o.sizes.empty()) sizes = load_token_sizes(o.sizes);

  const auto stats = corpus_stats(corpus, basis);
  const auto coverage = element_coverage(corpus, basis);
  const auto flavor =
      o.flavor == "sample" ? CoverageFlavor::kSample : CoverageFlavor::kOccurrence;
  json suggested = json::array();
  for (const auto k : suggest_syntax_scenarios(coverage, o.coverage, o.tol, flavor)) {
    suggested.push_back(to_string(k));
  }
  json preset = json::array();
  for (const auto k : default_element_preset(task)) {
    preset.push_back({{"element", to_string(k)},
                      {"sample_fraction", coverage.sample_fraction[static_cast<std::size_t>(k)]}});
  }
  json ranges = json::array();
  const SizeOptions size_opts{basis, sizes ? &*sizes : nullptr, false};
  for (const auto& r : default_complexity_scenarios()) {
    json entry = {{"range", to_string(r)}, {"region", to_string(region_label(r))}};
    try {
      const auto sel = complexity_members(corpus, r, size_opts);
      entry["size_interval"] = {sel.size_min, sel.size_max};
      entry["n_train"] = sel.train_ids.size();
      entry["n_valid"] = sel.valid_ids.size();
      entry["n_test"] = sel.test_ids.size();
    } catch (const InputError& e) {
      entry["error"] = e.what();
    }
    ranges.push_back(entry);
  }
  const json result = {{"format_version", kAnalysisFormatVersion},
                       {"config", config_of(app)},
                       {"task", to_string(task)},
                       {"basis", to_string(basis.value_or(default_basis(task)))},
                       {"stats", to_json(stats)},
                       {"element_coverage", to_json(coverage)},
                       {"suggested_syntax_elements", suggested},
                       {"default_syntax_preset", preset},
                       {"complexity_presets", ranges}};
  if (o.out.empty()) {
    out << result.dump(2) << "\n";
  } else {
    write_json(o.out, result);
    out << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

int cmd_cluster(const CLI::App& app, const GlobalOptions& g, const ClusterOptions& o,
                std::ostream& out, std::ostream& err) {
  const auto task = require_task(g);
  require(o.corpus, "--corpus");
  require(o.embeddings, "--embeddings");
  const auto corpus = load_corpus(o.corpus, task);
  const auto emb = load_embeddings(o.embeddings, corpus);

  RowMatrix points = emb.vectors;
  json pca_json = nullptr;
  if (o.pca_dim > 0) {
    RowMatrix fit_rows = emb.vectors;
    if (o.pca_train_only) {
      std::vector<bool> keep(emb.size());
      for (std::size_t i = 0; i < emb.size(); ++i) {
        keep[i] = corpus.at(emb.ids[i]).partition == Partition::kTrain;
      }
      fit_rows = select_rows(emb, keep).vectors;
    }
    const auto pca = fit_pca(fit_rows, o.pca_dim, o.min_explained);
    for (const auto& w : pca.warnings) err << "warning: " << w << "\n";
    points = pca.model.transform(emb.vectors);
    pca_json = summary_json(pca);
  }

  KMeansOptions km;
  km.max_iter = o.max_iter;
  km.tol = o.tol;
  std::optional<ElbowResult> elbow;
  int k = 0;
  if (o.k == "auto") {
    elbow = elbow_select(points, o.k_min, o.k_max, g.seed, km);
    k = elbow->best_k;
  } else {
    try {
      std::size_t used = 0;
      k = std::stoi(o.k, &used);
      if (used != o.k.size()) throw std::invalid_argument(o.k);
    } catch (const std::exception&) {
      throw InputError("--k must be an integer or \"auto\", got \"" + o.k + "\"");
    }
  }
  const auto fit = kmeans_fit(points, k, g.seed, km);
  if (!fit.converged) {
    err << "warning: k-means stopped after " << fit.iterations << " iterations without converging\n";
  }
  ClusterModel model(emb.ids, fit, g.seed);
  model.config = config_of(app);
  model.pca = pca_json;
  model.elbow = elbow;
  write_json(o.out, to_json(model));
  out << "wrote " << o.out << " (k=" << k << ", inertia=" << fit.inertia << ")\n";
  return kExitOk;
}

std::vector<ScenarioSpec> split_scenarios(const GlobalOptions& g, const SplitCliOptions& o,
                                          TaskKind task, const ClusterModel* clusters) {
  const auto dimension = parse_dimension(o.dimension);
  const auto basis = basis_override(g);
  std::vector<ScenarioSpec> specs;
  const auto add = [&](ScenarioParams params) {
    ScenarioSpec s;
    s.dimension = dimension;
    s.params = std::move(params);
    s.basis = basis;
    s.mask_fraction = o.mask_fraction;
    s.seed = g.seed;
    validate(s);
    s.name = default_scenario_name(s);
    specs.push_back(std::move(s));
  };
  switch (dimension) {
    case Dimension::kComplexity:
      if (o.preset) {
        for (const auto& r : default_complexity_scenarios()) add(r);
      } else {
        if (o.ranges.empty()) throw InputError("complexity split needs --range or --preset");
        for (const auto& r : o.ranges) add(parse_complexity_range(r));
      }
      break;
    case Dimension::kSyntax:
      if (o.preset) {
        for (const auto k : default_element_preset(task)) add(std::vector<ElementKind>{k});
      } else {
        if (o.elements.empty()) throw InputError("syntax split needs --elements or --preset");
        std::vector<ElementKind> kinds;
        for (const auto& e : o.elements) kinds.push_back(element_kind_from_string(e));
        add(kinds);
      }
      break;
    case Dimension::kSemantics:
      if (clusters == nullptr) throw InputError("semantic split needs --cluster-model");
      if (o.preset) {
        std::vector<int> ids(static_cast<std::size_t>(clusters->k()));
        std::iota(ids.begin(), ids.end(), 0);
        deterministic_shuffle(ids, g.seed);
        ids.resize(std::min<std::size_t>(ids.size(), kSemanticPresetSize));
        for (const int c : ids) add(std::vector<int>{c});
      } else {
        if (o.clusters.empty()) throw InputError("semantic split needs --clusters or --preset");
        add(o.clusters);
      }
      break;
  }
  if (!o.name.empty()) {
    if (specs.size() != 1) throw InputError("--name applies to a single scenario only");
    specs.front().name = o.name;
  }
  return specs;
}

int cmd_split(const CLI::App& app, const GlobalOptions& g, const SplitCliOptions& o,
              std::ostream& out, std::ostream& err) {
  const auto task = require_task(g);
  require(o.corpus, "--corpus");
  require(o.dimension, "--dimension");
  const auto corpus = load_corpus(o.corpus, task);
  std::optional<ClusterModel> clusters;
  if (!o.cluster_model.empty()) clusters = load_cluster_model(o.cluster_model);
  std::optional<TokenSizeTable> sizes;
  if (!o.sizes.empty()) sizes = load_token_sizes(o.sizes);

  const auto specs = split_scenarios(g, o, task, clusters ? &*clusters : nullptr);
  SplitOptions opts;
  opts.strict = o.strict;
  opts.filter_valid = o.filter_valid;
  opts.sizes = sizes ? &*sizes : nullptr;
  const auto config = config_of(app);

  std::vector<SplitManifest> manifests;
  for (const auto& spec : specs) {
    auto m = build_split(corpus, spec, clusters ? &*clusters : nullptr, opts);
    m.config = config;
    manifests.push_back(std::move(m));
  }
  json index = json::array();
  for (const auto& m : manifests) {
    emit_training_files(m, corpus, fs::path(o.out) / m.scenario.name);
    for (const auto& w : m.warnings) err << "warning: " << m.scenario.name << ": " << w << "\n";
    out << m.scenario.name << ": masked " << m.stats.n_masked << " of " << m.stats.n_train
        << " train samples, " << m.stats.n_ood_test << " OOD test samples";
    if (m.stats.region) out << " (" << to_string(*m.stats.region) << ")";
    out << "\n";
    json entry = {{"name", m.scenario.name},
                  {"dir", m.scenario.name},
                  {"dimension", to_string(m.scenario.dimension)},
                  {"n_masked", m.stats.n_masked},
                  {"n_ood_test", m.stats.n_ood_test}};
    entry["region"] = m.stats.region ? json(to_string(*m.stats.region)) : json(nullptr);
    index.push_back(entry);
  }
  write_json(fs::path(o.out) / "index.json", {{"format_version", kSplitIndexFormatVersion},
                                              {"config", config},
                                              {"scenarios", index}});
  return kExitOk;
}

fs::path manifest_path(const std::string& arg) {
  const fs::path p(arg);
  return fs::is_directory(p) ? p / "manifest.json" : p;
}

std::vector<fs::path> manifests_from_index(const fs::path& dir) {
  const auto index_path = dir / "index.json";
  std::ifstream in(index_path);
  if (!in) throw InputError("cannot open split index " + index_path.string());
  std::vector<fs::path> out;
  try {
    const auto j = json::parse(in);
    for (const auto& s : j.at("scenarios")) {
      out.push_back(dir / s.at("dir").get<std::string>() / "manifest.json");
    }
  } catch (const json::exception& e) {
    throw InputError(index_path.string() + ": " + e.what());
  }
  return out;
}

// One prediction file per manifest, or a single file shared by all.
std::vector<std::string> broadcast(const std::vector<std::string>& files, std::size_t n,
                                   const char* flag) {
  if (files.size() == 1) return std::vector<std::string>(n, files.front());
  if (files.size() != n) {
    throw InputError(std::string(flag) + " needs one file or one per manifest (" +
                     std::to_string(n) + "), got " + std::to_string(files.size()));
  }
  return files;
}

void write_report_files(const fs::path& dir, std::span<const EvalReport> reports,
                        const json& document) {
  write_json(dir / "report.json", document);
  write_text(dir / "report.csv", metrics_csv(reports));
  write_text(dir / "elements.csv", elements_csv(reports));
  write_text(dir / "nll.csv", nll_csv(reports));
}

int cmd_eval(const CLI::App& app, const GlobalOptions& g, const EvalCliOptions& o,
             std::ostream& out) {
  const auto task = require_task(g);
  require(o.corpus, "--corpus");
  std::vector<fs::path> manifest_files;
  for (const auto& m : o.manifests) manifest_files.push_back(manifest_path(m));
  if (!o.splits.empty()) {
    for (auto& p : manifests_from_index(o.splits)) manifest_files.push_back(std::move(p));
  }
  if (manifest_files.empty()) throw InputError("eval needs --manifest or --splits");
  if (o.predictions.empty()) throw InputError("--predictions is required");
  const auto pred_files = broadcast(o.predictions, manifest_files.size(), "--predictions");
  std::vector<std::string> base_files;
  if (!o.baselines.empty()) base_files = broadcast(o.baselines, manifest_files.size(), "--baseline");

  const auto corpus = load_corpus(o.corpus, task);
  EvalOptions opts;
  for (const auto& k : o.kinds) opts.kinds.push_back(element_kind_from_string(k));
  opts.frequency.rare_threshold = o.rare_threshold;
  opts.frequency.per_sample = o.per_sample;
  opts.bins = o.bins;
  opts.normalize_nll = !o.unnormalized_nll;
  const auto config = config_of(app);

  std::map<std::string, PredictionSet> cache;
  const auto predictions_at = [&](const std::string& path) -> const PredictionSet& {
    auto it = cache.find(path);
    if (it == cache.end()) it = cache.emplace(path, load_predictions(path)).first;
    return it->second;
  };

  std::vector<EvalReport> reports;
  for (std::size_t i = 0; i < manifest_files.size(); ++i) {
    const auto manifest = load_manifest(manifest_files[i]);
    const auto& preds = predictions_at(pred_files[i]);
    const PredictionSet* base = base_files.empty() ? nullptr : &predictions_at(base_files[i]);
    auto r = evaluate_scenario(manifest, corpus, preds, base, opts);
    r.config = config;
    out << r.scenario << ": em=" << r.em << " bleu=" << r.bleu;
    if (r.relative_em) out << " relative_em=" << *r.relative_em;
    out << " n=" << r.n_evaluated << "\n";
    reports.push_back(std::move(r));
  }
  json docs = json::array();
  for (const auto& r : reports) docs.push_back(to_json(r));
  const json document = {{"format_version", kReportFormatVersion},
                         {"config", config},
                         {"reports", docs},
                         {"aggregate", aggregate_json(reports)}};
  write_report_files(o.out, reports, document);
  out << "wrote " << (fs::path(o.out) / "report.json").string() << "\n";
  return kExitOk;
}

int cmd_report(const CLI::App& app, const ReportOptions& o, std::ostream& out) {
  if (o.inputs.empty()) throw InputError("report needs at least one --input");
  std::vector<EvalReport> reports;
  for (const auto& path : o.inputs) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open report " + path);
    json j;
    try {
      j = json::parse(in);
      for (const auto& r : j.at("reports")) reports.push_back(eval_report_from_json(r));
    } catch (const json::exception& e) {
      throw InputError(path + ": " + e.what());
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  const auto config = config_of(app);
  const auto aggregate = aggregate_json(reports);
  json docs = json::array();
  for (const auto& r : reports) docs.push_back(to_json(r));
  write_report_files(o.out, reports,
                     {{"format_version", kReportFormatVersion},
                      {"config", config},
                      {"reports", docs},
                      {"aggregate", aggregate}});
  for (const auto& [dim, mean] : aggregate.at("mean_relative_em").items()) {
    out << dim << ": mean relative_em=" << mean.get<double>() << "\n";
  }
  out << "wrote " << (fs::path(o.out) / "report.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate out-of-distribution scenarios for code datasets and score predictions.",
               "oodsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; flags override it");

  GlobalOptions g;
  app.add_option("--task", g.task, "text2code, refinement or translation");
  app.add_option("--basis", g.basis, "Property basis override: input or target");
  app.add_option("--seed", g.seed, "Seed for masking, k-means and presets");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Token-size and element statistics of a corpus");
  analyze->add_option("--corpus", ao.corpus, "Corpus JSONL");
  analyze->add_option("--out", ao.out, "Output JSON (stdout when omitted)");
  analyze->add_option("--sizes", ao.sizes, "External token size table JSONL");
  analyze->add_option("--coverage", ao.coverage, "Target train coverage for suggestions")
      ->capture_default_str();
  analyze->add_option("--tol", ao.tol, "Coverage tolerance")->capture_default_str();
  analyze->add_option("--flavor", ao.flavor, "sample or occurrence coverage")
      ->capture_default_str();

  ClusterOptions co;
  auto* cluster = app.add_subcommand("cluster", "PCA and k-means over sample embeddings");
  cluster->add_option("--corpus", co.corpus, "Corpus JSONL");
  cluster->add_option("--embeddings", co.embeddings, "Embeddings JSONL");
  cluster->add_option("--out", co.out, "Cluster model JSON")->capture_default_str();
  cluster->add_option("--k", co.k, "Number of clusters or \"auto\" for the elbow method")
      ->capture_default_str();
  cluster->add_option("--k-min", co.k_min, "Smallest K tried by --k auto")->capture_default_str();
  cluster->add_option("--k-max", co.k_max, "Largest K tried by --k auto")->capture_default_str();
  cluster->add_option("--pca-dim", co.pca_dim, "PCA dimension; 0 disables PCA")
      ->capture_default_str();
  cluster->add_option("--min-explained", co.min_explained,
                      "Warn below this cumulative explained variance")
      ->capture_default_str();
  cluster->add_flag("--pca-train-only", co.pca_train_only, "Fit PCA on train rows only");
  cluster->add_option("--max-iter", co.max_iter, "Lloyd iteration cap")->capture_default_str();
  cluster->add_option("--tol", co.tol, "Centroid shift tolerance")->capture_default_str();

  SplitCliOptions so;
  auto* split = app.add_subcommand("split", "Build OOD training splits by rejection sampling");
  split->add_option("--corpus", so.corpus, "Corpus JSONL");
  split->add_option("--dimension", so.dimension, "complexity, syntax or semantics");
  split->add_option("--out", so.out, "Output directory")->capture_default_str();
  split->add_option("--name", so.name, "Scenario name for a single scenario");
  split->add_option("--range", so.ranges, "Complexity percentile range lo:hi (repeatable)");
  split->add_option("--elements", so.elements, "Element kinds of one syntax scenario");
  split->add_option("--clusters", so.clusters, "Cluster ids of one semantic scenario");
  split->add_option("--cluster-model", so.cluster_model, "Cluster model JSON");
  split->add_option("--sizes", so.sizes, "External token size table JSONL");
  split->add_option("--mask-fraction", so.mask_fraction,
                    "Share of property-matching train samples to mask")
      ->capture_default_str();
  split->add_flag("--preset", so.preset, "Use the default scenarios of the dimension");
  split->add_flag("--strict", so.strict, "Fail on samples that do not lex");
  split->add_flag("--filter-valid", so.filter_valid,
                  "Also drop property-matching validation samples");

  EvalCliOptions eo;
  auto* eval = app.add_subcommand("eval", "Score predictions on OOD test sets");
  eval->add_option("--corpus", eo.corpus, "Corpus JSONL");
  eval->add_option("--manifest", eo.manifests, "Manifest JSON or scenario directory (repeatable)");
  eval->add_option("--splits", eo.splits, "Split output directory holding index.json");
  eval->add_option("--predictions", eo.predictions, "Predictions JSONL (one, or one per manifest)");
  eval->add_option("--baseline", eo.baselines,
                   "Predictions of the model trained without masking (one, or one per manifest)");
  eval->add_option("--out", eo.out, "Output directory")->capture_default_str();
  eval->add_option("--kinds", eo.kinds, "Element kinds to report (default: all)");
  eval->add_option("--rare-threshold", eo.rare_threshold,
                   "Train sample fraction at or below which an element is rare")
      ->capture_default_str();
  eval->add_option("--bins", eo.bins, "NLL histogram bins")->capture_default_str();
  eval->add_flag("--per-sample", eo.per_sample, "Count samples instead of element occurrences");
  eval->add_flag("--unnormalized-nll", eo.unnormalized_nll,
                 "Use summed instead of length-normalized NLL");

  ReportOptions ro;
  auto* report = app.add_subcommand("report", "Aggregate eval reports across scenarios");
  report->add_option("--input", ro.inputs, "report.json from eval (repeatable)");
  report->add_option("--out", ro.out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(app, g, ao, out);
    if (cluster->parsed()) return cmd_cluster(app, g, co, out, err);
    if (split->parsed()) return cmd_split(app, g, so, out, err);
    if (eval->parsed()) return cmd_eval(app, g, eo, out);
    if (report->parsed()) return cmd_report(app, ro, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace oodsim::cli
