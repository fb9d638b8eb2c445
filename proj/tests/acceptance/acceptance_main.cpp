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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "brute_force.hpp"
#include "fidelity.hpp"
#include "oodsim/cli.hpp"
#include "oodsim/cluster_model.hpp"
#include "oodsim/distribution.hpp"
#include "oodsim/evaluation.hpp"
#include "oodsim/kmeans.hpp"
#include "oodsim/pca.hpp"
#include "oodsim/rng.hpp"
#include "oodsim/splitter.hpp"
#include "synthetic.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oodsim;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(failed_) + " failed check(s)";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }
  std::string note;

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

RowMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.uniform01() - 1.0;
  }
  return m;
}

RowMatrix centers(std::initializer_list<std::initializer_list<double>> rows) {
  RowMatrix m(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
    if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
  }
  return true;
}

void splitter_equivalence(Check& c) {
  testing::SyntheticOptions opts;
  opts.n_train = 8000;
  opts.n_valid = 1000;
  opts.n_test = 1000;
  const auto synth = testing::make_synthetic_corpus(opts);
  const Corpus corpus(TaskKind::kText2Code, synth.samples);

  constexpr int kClusters = 20;
  SplitMix64 rng(2024);
  std::vector<int> cluster_of;
  std::vector<std::string> ids;
  for (const auto& s : synth.samples) {
    ids.push_back(s.id);
    cluster_of.push_back(static_cast<int>(rng.uniform_index(kClusters)));
  }
  KMeansResult fit;
  fit.centroids = RowMatrix::Zero(kClusters, 1);
  fit.labels = cluster_of;
  const ClusterModel clusters(ids, fit, 0);

  const auto start = Clock::now();
  std::size_t runs = 0;
  for (const auto dim : {Dimension::kComplexity, Dimension::kSyntax, Dimension::kSemantics}) {
    for (int i = 0; i < 20; ++i) {
      ScenarioSpec spec;
      spec.dimension = dim;
      spec.mask_fraction = i % 2 == 0 ? 1.0 : 0.05 + 0.9 * rng.uniform01();
      spec.seed = rng.next();
      if (dim == Dimension::kComplexity) {
        const auto lo = static_cast<double>(rng.uniform_index(96));
        const auto hi = lo + 1.0 + static_cast<double>(rng.uniform_index(
                                       static_cast<std::uint64_t>(100.0 - lo)));
        spec.params = ComplexityRange{lo, hi};
      } else if (dim == Dimension::kSyntax) {
        std::vector<ElementKind> kinds;
        const auto n = 1 + rng.uniform_index(3);
        for (std::uint64_t k = 0; k < n; ++k) {
          kinds.push_back(kAllElementKinds[rng.uniform_index(kNumElementKinds)]);
        }
        spec.params = kinds;
      } else {
        std::vector<int> ids_c;
        const auto n = 1 + rng.uniform_index(4);
        for (std::uint64_t k = 0; k < n; ++k) {
          ids_c.push_back(static_cast<int>(rng.uniform_index(kClusters)));
        }
        spec.params = ids_c;
      }
      spec.name = default_scenario_name(spec);
      const auto m = build_split(corpus, spec, &clusters);
      const auto b = testing::brute_force_split(synth, spec, cluster_of);
      const auto diff = testing::compare_split(m, b, spec.mask_fraction);
      c.expect(diff.empty(), spec.name + ": " + diff);
      ++runs;
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "took " + fmt(elapsed) + " s");
  c.note = std::to_string(runs) + " specs on 10000 samples in " + fmt(elapsed) + " s";
}

void complexity_presets(Check& c) {
  constexpr std::size_t kTrain = 2000;
  const auto synth = testing::make_distinct_size_corpus(kTrain, 500, 31);
  const Corpus corpus(TaskKind::kText2Code, synth.samples);
  std::vector<std::set<std::string>> masked;
  std::string counts;
  for (const auto& r : default_complexity_scenarios()) {
    ScenarioSpec spec;
    spec.params = r;
    const auto m = build_split(corpus, spec);
    const double expected = (r.hi_pct - r.lo_pct) / 100.0 * kTrain;
    const double got = static_cast<double>(m.masked_train_ids.size());
    c.expect(std::abs(got - expected) <= 1.0,
             to_string(r) + " masked " + fmt(got) + ", expected " + fmt(expected));
    masked.emplace_back(m.masked_train_ids.begin(), m.masked_train_ids.end());
    counts += (counts.empty() ? "" : " ") + std::to_string(m.masked_train_ids.size());
  }
  for (std::size_t a = 0; a < masked.size(); ++a) {
    for (std::size_t b = a + 1; b < masked.size(); ++b) {
      std::vector<std::string> common;
      std::set_intersection(masked[a].begin(), masked[a].end(), masked[b].begin(),
                            masked[b].end(), std::back_inserter(common));
      c.expect(common.empty(), "ranges " + std::to_string(a) + " and " + std::to_string(b) +
                                   " share " + std::to_string(common.size()) + " ids");
    }
  }
  c.note = "masked of " + std::to_string(kTrain) + ": " + counts;
}

void generalization_mask(Check& c) {
  std::vector<CodeSample> samples;
  for (int i = 0; i < 400; ++i) {
    const bool has = i % 3 == 0 && i / 3 < 101;
    samples.push_back({"tr" + std::to_string(i), Partition::kTrain, "",
                       has ? "while (a) { a--; }" : "a = " + std::to_string(i) + ";", {}, ""});
  }
  samples.push_back({"te0", Partition::kTest, "", "while (b) {}", {}, ""});
  const Corpus corpus(TaskKind::kText2Code, samples);
  ScenarioSpec spec;
  spec.dimension = Dimension::kSyntax;
  spec.params = std::vector<ElementKind>{ElementKind::kWhileStatement};
  spec.mask_fraction = 0.5;
  spec.seed = 42;
  const auto first = build_split(corpus, spec);
  c.expect(first.stats.n_candidates == 101, "candidates " + std::to_string(first.stats.n_candidates));
  c.expect(first.masked_train_ids.size() == 51,
           "masked " + std::to_string(first.masked_train_ids.size()));
  for (int rerun = 0; rerun < 5; ++rerun) {
    c.expect(build_split(corpus, spec).masked_train_ids == first.masked_train_ids,
             "rerun " + std::to_string(rerun) + " differs");
  }

  // Reference selections produced by an independent implementation.
  const auto golden = read_json(std::string(OODSIM_FIXTURE_DIR) + "/mask_golden.json");
  const auto candidates = golden["candidates"].get<std::vector<std::string>>();
  const double fraction = golden["mask_fraction"].get<double>();
  std::size_t cases = 0;
  for (const auto& g : golden["cases"]) {
    const auto seed = g["seed"].get<std::uint64_t>();
    auto masked = select_masked(candidates, fraction, seed);
    std::sort(masked.begin(), masked.end());
    c.expect(masked.size() == 51, "golden seed " + g["seed"].dump() + " size");
    c.expect(masked == g["masked"].get<std::vector<std::string>>(),
             "golden seed " + g["seed"].dump() + " differs");
    ++cases;
  }
  c.note = "51 of 101 masked; 5 reruns identical; " + std::to_string(cases) +
           " reference seeds matched";
}

void element_fidelity(Check& c) {
  const auto r =
      testing::element_fidelity(std::string(OODSIM_FIXTURE_DIR) + "/elements_fixture.jsonl");
  c.expect(r.n_samples >= 200, "fixture has " + std::to_string(r.n_samples) + " functions");
  for (std::size_t k = 0; k < kNumElementKinds; ++k) {
    c.expect(r.samples_with_kind[k] > 0,
             std::string(to_string(kAllElementKinds[k])) + " absent from fixture");
  }
  c.expect(r.presence_agreement() == 1.0, "presence " + fmt(r.presence_agreement()));
  c.expect(r.occurrence_agreement() >= 0.95, "occurrence " + fmt(r.occurrence_agreement()));
  c.note = std::to_string(r.n_samples) + " functions, presence " +
           fmt(100.0 * r.presence_agreement()) + "%, occurrence " +
           fmt(100.0 * r.occurrence_agreement()) + "%";
}

void bleu_oracle(Check& c) {
  const auto fx = read_json(std::string(OODSIM_FIXTURE_DIR) + "/bleu_fixture.json");
  std::vector<std::vector<std::string>> hyp, ref;
  for (const auto& p : fx["pairs"]) {
    hyp.push_back(p["hypothesis"].get<std::vector<std::string>>());
    ref.push_back(p["reference"].get<std::vector<std::string>>());
  }
  const double expected = fx["bleu"].get<double>();
  const double got = corpus_bleu(hyp, ref);
  c.expect(hyp.size() == 50, "fixture has " + std::to_string(hyp.size()) + " pairs");
  c.expect(std::abs(got - expected) <= 1e-6, "bleu " + fmt(got) + " vs " + fmt(expected));
  c.expect(corpus_bleu(ref, ref) == 1.0, "identical predictions do not score 1.0");
  const std::vector<std::vector<std::string>> empty(ref.size());
  c.expect(corpus_bleu(empty, ref) == 0.0, "empty predictions do not score 0.0");
  c.note = "|bleu - reference| = " + fmt(std::abs(got - expected));
}

void pca_checks(Check& c) {
  const auto wide = fit_pca(random_matrix(300, 20, 7), 10, 0.0);
  const RowMatrix gram = wide.model.components * wide.model.components.transpose();
  const double ortho = (gram - RowMatrix::Identity(10, 10)).cwiseAbs().maxCoeff();
  c.expect(ortho <= 1e-8, "orthonormality error " + fmt(ortho));

  RowMatrix x = random_matrix(200, 2, 3) * random_matrix(2, 6, 4);
  x.rowwise() += Eigen::RowVectorXd::LinSpaced(6, 1.0, 6.0);
  const auto rank2 = fit_pca(x, 2);
  const double explained = rank2.model.cumulative_explained_variance();
  c.expect(std::abs(explained - 1.0) <= 1e-9, "rank-2 explained " + fmt(explained));
  c.expect(rank2.warnings.empty(), "rank-2 data raised a warning");

  const auto noise = fit_pca(random_matrix(500, 40, 11), 5);
  c.expect(noise.warnings.size() == 1, "isotropic noise did not warn");
  c.note = "orthonormality error " + fmt(ortho) + ", rank-2 explained " + fmt(explained) +
           ", noise explained " + fmt(noise.model.cumulative_explained_variance());
}

void kmeans_checks(Check& c) {
  const auto x4 = testing::make_blobs(centers({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}, {0, 0, 3}}), 80,
                                      2.0, 8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fit = kmeans_fit(x4, 6, seed);
    for (std::size_t i = 1; i < fit.inertia_history.size(); ++i) {
      c.expect(fit.inertia_history[i] <= fit.inertia_history[i - 1],
               "inertia rose at iteration " + std::to_string(i) + ", seed " +
                   std::to_string(seed));
    }
  }

  std::vector<int> truth;
  const auto x2 = testing::make_blobs(centers({{0, 0}, {10, 10}}), 100, 1.0, 4, &truth);
  c.expect(same_partition(kmeans_fit(x2, 2, 17).labels, truth), "two blobs not recovered");

  std::string picks;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x3 =
        testing::make_blobs(centers({{0, 0}, {10, 0}, {5, 9}}), 60, 1.5, 100 + seed);
    const int k = elbow_select(x3, 1, 10, seed).best_k;
    c.expect(k == 3, "elbow picked " + std::to_string(k) + " for seed " + std::to_string(seed));
    picks += std::to_string(k);
  }

  const auto dir = fs::temp_directory_path() / "oodsim_acceptance_kmeans";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto write_model = [&](const fs::path& p) {
    std::vector<std::string> ids;
    for (Eigen::Index i = 0; i < x4.rows(); ++i) ids.push_back("p" + std::to_string(i));
    const ClusterModel model(ids, kmeans_fit(x4, 4, 7), 7);
    std::ofstream out(p, std::ios::binary);
    out << to_json(model).dump(2) << "\n";
  };
  write_model(dir / "a.json");
  write_model(dir / "b.json");
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  c.expect(slurp(dir / "a.json") == slurp(dir / "b.json"), "model files differ");
  fs::remove_all(dir);
  c.note = "elbow picks " + picks + " over 10 seeds";
}

int run_cli(const std::vector<std::string>& args, Check& c) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  std::string cmd;
  for (const auto& a : args) cmd += a + " ";
  c.expect(code == cli::kExitOk, cmd + "exited " + std::to_string(code) + ": " + err.str());
  return code;
}

void end_to_end(Check& c) {
  const std::string data = OODSIM_MINI_DATA_DIR;
  const std::string corpus = data + "/corpus.jsonl";
  const auto work = fs::temp_directory_path() / "oodsim_acceptance_e2e";
  fs::remove_all(work);
  const auto w = [&](const std::string& name) { return (work / name).string(); };
  const auto start = Clock::now();
  run_cli({"analyze", "--task", "text2code", "--corpus", corpus, "--out", w("analysis.json")}, c);
  run_cli({"cluster", "--task", "text2code", "--corpus", corpus, "--embeddings",
           data + "/embeddings.jsonl", "--k", "5", "--pca-dim", "8", "--out",
           w("cluster_model.json")},
          c);
  std::vector<std::string> split_dirs;
  for (const std::string dim : {"complexity", "syntax", "semantics"}) {
    std::vector<std::string> args = {"split",       "--task",   "text2code",      "--corpus",
                                     corpus,        "--dimension", dim,           "--preset",
                                     "--out",       w("splits_" + dim)};
    if (dim == "semantics") {
      args.push_back("--cluster-model");
      args.push_back(w("cluster_model.json"));
    }
    run_cli(args, c);
    split_dirs.push_back(w("splits_" + dim));
  }
  std::size_t scenarios = 0, ratios = 0, groups = 0;
  for (std::size_t i = 0; i < split_dirs.size(); ++i) {
    const auto out = w("eval_" + std::to_string(i));
    if (run_cli({"eval", "--task", "text2code", "--corpus", corpus, "--splits", split_dirs[i],
                 "--predictions", data + "/self_predictions.jsonl", "--out", out},
                c) != cli::kExitOk) {
      continue;
    }
    const auto report = read_json(out + "/report.json");
    for (const auto& r : report["reports"]) {
      const auto name = r["scenario"].get<std::string>();
      ++scenarios;
      c.expect(r["em"].get<double>() == 1.0, name + " em " + r["em"].dump());
      c.expect(r["bleu"].get<double>() == 1.0, name + " bleu " + r["bleu"].dump());
      for (const auto& e : r["per_element_frequency"]) {
        if (e["ratio"].is_null()) continue;
        ++ratios;
        c.expect(e["ratio"].get<double>() == 1.0,
                 name + " " + e["element"].get<std::string>() + " ratio " + e["ratio"].dump());
      }
      const auto& h = r["nll_histogram"];
      c.expect(!h.is_null(), name + " has no NLL histogram");
      if (h.is_null()) continue;
      const auto edges = h["edges"].get<std::vector<double>>();
      for (const auto& g : h["groups"]) {
        ++groups;
        const auto density = g["density"].get<std::vector<double>>();
        double mass = 0.0;
        for (std::size_t b = 0; b < density.size(); ++b) mass += density[b] * (edges[b + 1] - edges[b]);
        c.expect(std::abs(mass - 1.0) <= 1e-9, name + " NLL mass " + fmt(mass));
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.expect(scenarios == 15, "evaluated " + std::to_string(scenarios) + " scenarios");
  c.expect(elapsed < 60.0, "took " + fmt(elapsed) + " s");
  fs::remove_all(work);
  c.note = std::to_string(scenarios) + " scenarios, " + std::to_string(ratios) +
           " element ratios, " + std::to_string(groups) + " NLL groups in " + fmt(elapsed) + " s";
}

struct Criterion {
  std::string name;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"splitter matches brute-force filter", splitter_equivalence},
      {"complexity presets mask 3% each, disjoint", complexity_presets},
      {"generalization mask 51 of 101, reproducible", generalization_mask},
      {"element recognizer agrees with parser annotations", element_fidelity},
      {"corpus BLEU matches reference implementation", bleu_oracle},
      {"PCA orthonormality, explained variance, noise warning", pca_checks},
      {"k-means inertia, blob recovery, elbow, model bytes", kmeans_checks},
      {"end-to-end pipeline on data/mini", end_to_end},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const auto took = " [" + fmt(seconds_since(start)) + " s]";
    if (c.ok()) {
      std::cout << "PASS  " << cr.name << "  (" << c.note << ")" << took << std::endl;
    } else {
      ++failed;
      std::cout << "FAIL  " << cr.name << "  (" << c.summary() << ")" << took << std::endl;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
