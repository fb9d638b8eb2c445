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

#include "oodsim/scenario.hpp"

#include <cmath>

#include "oodsim/error.hpp"

namespace oodsim {

std::string_view to_string(Dimension dimension) {
  switch (dimension) {
    case Dimension::kComplexity: return "complexity";
    case Dimension::kSyntax: return "syntax";
    case Dimension::kSemantics: return "semantics";
  }
  return "unknown";
}

Dimension parse_dimension(std::string_view name) {
  if (name == "complexity") return Dimension::kComplexity;
  if (name == "syntax") return Dimension::kSyntax;
  if (name == "semantics") return Dimension::kSemantics;
  throw InputError("unknown dimension \"" + std::string(name) +
                   "\" (expected complexity, syntax or semantics)");
}

void validate(const ScenarioSpec& spec) {
  const bool ok = (spec.dimension == Dimension::kComplexity &&
                   std::holds_alternative<ComplexityRange>(spec.params)) ||
                  (spec.dimension == Dimension::kSyntax &&
                   std::holds_alternative<std::vector<ElementKind>>(spec.params)) ||
                  (spec.dimension == Dimension::kSemantics &&
                   std::holds_alternative<std::vector<int>>(spec.params));
  if (!ok) {
    throw InputError("scenario parameters do not match dimension " +
                     std::string(to_string(spec.dimension)));
  }
  if (const auto* r = std::get_if<ComplexityRange>(&spec.params)) validate(*r);
  if (!(spec.mask_fraction > 0.0 && spec.mask_fraction <= 1.0)) {
    throw InputError("mask fraction must be in (0, 1], got " + std::to_string(spec.mask_fraction));
  }
}

std::string default_scenario_name(const ScenarioSpec& spec) {
  std::string name(to_string(spec.dimension));
  name += "_";
  if (const auto* r = std::get_if<ComplexityRange>(&spec.params)) {
    auto s = to_string(*r);
    for (auto& ch : s) {
      if (ch == ':') ch = '-';
    }
    name += s;
  } else if (const auto* kinds = std::get_if<std::vector<ElementKind>>(&spec.params)) {
    std::string joined;
    for (const auto k : *kinds) {
      if (!joined.empty()) joined += "+";
      std::string n(to_string(k));
      if (k == ElementKind::kGeOperator) n = "ge";
      if (k == ElementKind::kOrOperator) n = "or";
      joined += n;
    }
    name += joined.empty() ? "none" : joined;
  } else {
    const auto& ids = std::get<std::vector<int>>(spec.params);
    std::string joined;
    for (const int c : ids) {
      if (!joined.empty()) joined += "+";
      joined += "c" + std::to_string(c);
    }
    name += joined.empty() ? "none" : joined;
  }
  if (spec.mask_fraction < 1.0) {
    name += "_m" + std::to_string(static_cast<int>(std::lround(spec.mask_fraction * 100)));
  }
  return name;
}

nlohmann::json to_json(const ScenarioSpec& spec) {
  nlohmann::json j = {{"name", spec.name},
                      {"dimension", to_string(spec.dimension)},
                      {"mask_fraction", spec.mask_fraction},
                      {"seed", spec.seed}};
  j["basis"] = spec.basis ? nlohmann::json(to_string(*spec.basis)) : nlohmann::json(nullptr);
  if (const auto* r = std::get_if<ComplexityRange>(&spec.params)) {
    j["params"] = {{"lo_pct", r->lo_pct}, {"hi_pct", r->hi_pct}};
  } else if (const auto* kinds = std::get_if<std::vector<ElementKind>>(&spec.params)) {
    nlohmann::json names = nlohmann::json::array();
    for (const auto k : *kinds) names.push_back(to_string(k));
    j["params"] = {{"elements", names}};
  } else {
    j["params"] = {{"clusters", std::get<std::vector<int>>(spec.params)}};
  }
  return j;
}

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  try {
    ScenarioSpec spec;
    spec.name = j.at("name").get<std::string>();
    spec.dimension = parse_dimension(j.at("dimension").get<std::string>());
    spec.mask_fraction = j.at("mask_fraction").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("basis") && !j["basis"].is_null()) {
      spec.basis = parse_basis(j["basis"].get<std::string>());
    }
    const auto& p = j.at("params");
    switch (spec.dimension) {
      case Dimension::kComplexity:
        spec.params = ComplexityRange{p.at("lo_pct").get<double>(), p.at("hi_pct").get<double>()};
        break;
      case Dimension::kSyntax: {
        std::vector<ElementKind> kinds;
        for (const auto& n : p.at("elements")) {
          kinds.push_back(element_kind_from_string(n.get<std::string>()));
        }
        spec.params = kinds;
        break;
      }
      case Dimension::kSemantics:
        spec.params = p.at("clusters").get<std::vector<int>>();
        break;
    }
    validate(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scenario: ") + e.what());
  }
}

}  // namespace oodsim
