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

#include "oodsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "oodsim/error.hpp"

namespace oodsim {

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> number_or_null(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

// Shortest text that round-trips the double.
std::string fmt(double v) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::stod(buf) == v) break;
  }
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& f : r.elements) {
    elements.push_back({{"element", to_string(f.kind)},
                        {"gen_count", f.gen_count},
                        {"gt_count", f.gt_count},
                        {"ratio", optional_number(f.ratio)},
                        {"rarity", to_string(f.rarity)},
                        {"train_sample_fraction", f.train_sample_fraction}});
  }
  nlohmann::json nll = nullptr;
  if (r.nll) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : r.nll->groups) {
      groups.push_back({{"label", g.label},
                        {"n", std::accumulate(g.counts.begin(), g.counts.end(), std::uint64_t{0})},
                        {"skipped", g.skipped},
                        {"counts", g.counts},
                        {"density", g.density}});
    }
    nll = {{"edges", r.nll->edges}, {"groups", groups}};
  }
  return {{"format_version", kReportFormatVersion},
          {"scenario", r.scenario},
          {"dimension", to_string(r.dimension)},
          {"n_evaluated", r.n_evaluated},
          {"em", r.em},
          {"bleu", r.bleu},
          {"baseline_em", optional_number(r.baseline_em)},
          {"baseline_bleu", optional_number(r.baseline_bleu)},
          {"relative_em", optional_number(r.relative_em)},
          {"per_element_frequency", elements},
          {"nll_histogram", nll},
          {"diagnostics",
           {{"prediction_lex_failures", r.diagnostics.prediction_lex_failures},
            {"reference_lex_failures", r.diagnostics.reference_lex_failures},
            {"baseline_lex_failures", r.diagnostics.baseline_lex_failures},
            {"ignored_prediction_ids", r.diagnostics.ignored_prediction_ids},
            {"notes", r.diagnostics.notes}}},
          {"config", r.config}};
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kReportFormatVersion) {
      throw InputError("unsupported report format_version " + std::to_string(version));
    }
    EvalReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.dimension = parse_dimension(j.at("dimension").get<std::string>());
    r.n_evaluated = j.at("n_evaluated").get<std::size_t>();
    r.em = j.at("em").get<double>();
    r.bleu = j.at("bleu").get<double>();
    r.baseline_em = number_or_null(j.at("baseline_em"));
    r.baseline_bleu = number_or_null(j.at("baseline_bleu"));
    r.relative_em = number_or_null(j.at("relative_em"));
    for (const auto& e : j.at("per_element_frequency")) {
      ElementFrequency f;
      f.kind = element_kind_from_string(e.at("element").get<std::string>());
      f.gen_count = e.at("gen_count").get<std::uint64_t>();
      f.gt_count = e.at("gt_count").get<std::uint64_t>();
      f.ratio = number_or_null(e.at("ratio"));
      f.rarity = parse_rarity(e.at("rarity").get<std::string>());
      f.train_sample_fraction = e.at("train_sample_fraction").get<double>();
      r.elements.push_back(f);
    }
    const auto& nll = j.at("nll_histogram");
    if (!nll.is_null()) {
      NllHistogram h;
      h.edges = nll.at("edges").get<std::vector<double>>();
      for (const auto& g : nll.at("groups")) {
        NllGroup group;
        group.label = g.at("label").get<std::string>();
        group.skipped = g.at("skipped").get<std::size_t>();
        group.counts = g.at("counts").get<std::vector<std::uint64_t>>();
        group.density = g.at("density").get<std::vector<double>>();
        h.groups.push_back(std::move(group));
      }
      r.nll = std::move(h);
    }
    const auto& d = j.at("diagnostics");
    r.diagnostics.prediction_lex_failures = d.at("prediction_lex_failures").get<std::size_t>();
    r.diagnostics.reference_lex_failures = d.at("reference_lex_failures").get<std::size_t>();
    r.diagnostics.baseline_lex_failures = d.at("baseline_lex_failures").get<std::size_t>();
    r.diagnostics.ignored_prediction_ids = d.at("ignored_prediction_ids").get<std::size_t>();
    r.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
    r.config = j.at("config");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

EvalReport load_eval_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open report " + path.string());
  try {
    return eval_report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string metrics_csv(std::span<const EvalReport> reports) {
  std::string out = "scenario,dimension,metric,value\n";
  for (const auto& r : reports) {
    const auto prefix = csv_field(r.scenario) + "," + std::string(to_string(r.dimension)) + ",";
    out += prefix + "em," + fmt(r.em) + "\n";
    out += prefix + "bleu," + fmt(r.bleu) + "\n";
    out += prefix + "relative_em," + (r.relative_em ? fmt(*r.relative_em) : "") + "\n";
  }
  return out;
}

std::string elements_csv(std::span<const EvalReport> reports) {
  std::string out = "scenario,element,gen_count,gt_count,ratio,rarity,train_sample_fraction\n";
  for (const auto& r : reports) {
    for (const auto& f : r.elements) {
      out += csv_field(r.scenario) + "," + csv_field(std::string(to_string(f.kind))) + "," +
             std::to_string(f.gen_count) + "," + std::to_string(f.gt_count) + "," +
             (f.ratio ? fmt(*f.ratio) : "") + "," + std::string(to_string(f.rarity)) + "," +
             fmt(f.train_sample_fraction) + "\n";
    }
  }
  return out;
}

std::string nll_csv(std::span<const EvalReport> reports) {
  std::string out = "scenario,group,bin_lo,bin_hi,count,density\n";
  for (const auto& r : reports) {
    if (!r.nll) continue;
    for (const auto& g : r.nll->groups) {
      for (std::size_t b = 0; b < g.counts.size(); ++b) {
        out += csv_field(r.scenario) + "," + csv_field(g.label) + "," + fmt(r.nll->edges[b]) +
               "," + fmt(r.nll->edges[b + 1]) + "," + std::to_string(g.counts[b]) + "," +
               fmt(g.density[b]) + "\n";
      }
    }
  }
  return out;
}

nlohmann::json aggregate_json(std::span<const EvalReport> reports) {
  nlohmann::json means = nlohmann::json::object();
  for (const auto& [dim, mean] : mean_relative_em_by_dimension(reports)) {
    means[std::string(to_string(dim))] = mean;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    rows.push_back({{"scenario", r.scenario},
                    {"dimension", to_string(r.dimension)},
                    {"em", r.em},
                    {"bleu", r.bleu},
                    {"relative_em", optional_number(r.relative_em)}});
  }
  return {{"format_version", kReportFormatVersion},
          {"mean_relative_em", means},
          {"scenarios", rows}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace oodsim
