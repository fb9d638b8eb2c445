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

#include <gtest/gtest.h>

#include "oodsim/error.hpp"

namespace oodsim {
namespace {

TEST(Scenario, ValidateParamsMatchDimension) {
  ScenarioSpec s;
  s.dimension = Dimension::kSyntax;
  s.params = ComplexityRange{0, 3};
  EXPECT_THROW(validate(s), InputError);
  s.params = std::vector<ElementKind>{ElementKind::kBreak};
  EXPECT_NO_THROW(validate(s));
  s.mask_fraction = 0.0;
  EXPECT_THROW(validate(s), InputError);
  s.mask_fraction = 1.5;
  EXPECT_THROW(validate(s), InputError);
  s.mask_fraction = 0.5;
  s.dimension = Dimension::kSemantics;
  EXPECT_THROW(validate(s), InputError);
  s.params = std::vector<int>{3};
  EXPECT_NO_THROW(validate(s));
  s.dimension = Dimension::kComplexity;
  s.params = ComplexityRange{5, 2};
  EXPECT_THROW(validate(s), InputError);
}

TEST(Scenario, DefaultNames) {
  ScenarioSpec s;
  s.params = ComplexityRange{97, 100};
  EXPECT_EQ(default_scenario_name(s), "complexity_97-100");
  s.dimension = Dimension::kSyntax;
  s.params = std::vector<ElementKind>{ElementKind::kWhileStatement, ElementKind::kGeOperator};
  s.mask_fraction = 0.5;
  EXPECT_EQ(default_scenario_name(s), "syntax_while_statement+ge_m50");
  s.dimension = Dimension::kSemantics;
  s.params = std::vector<int>{3, 7};
  s.mask_fraction = 1.0;
  EXPECT_EQ(default_scenario_name(s), "semantics_c3+c7");
}

TEST(Scenario, JsonRoundTrip) {
  for (const auto& params : std::vector<ScenarioParams>{
           ComplexityRange{24, 27}, std::vector<ElementKind>{ElementKind::kOrOperator},
           std::vector<int>{1, 4}}) {
    ScenarioSpec s;
    s.params = params;
    s.dimension = params.index() == 0   ? Dimension::kComplexity
                  : params.index() == 1 ? Dimension::kSyntax
                                        : Dimension::kSemantics;
    s.name = "n";
    s.seed = 123456789012345ULL;
    s.mask_fraction = 0.5;
    s.basis = Basis::kInput;
    const auto back = scenario_from_json(to_json(s));
    EXPECT_EQ(to_json(back), to_json(s));
  }
}

TEST(Scenario, MalformedJson) {
  EXPECT_THROW(scenario_from_json(nlohmann::json::object()), InputError);
  auto j = to_json(ScenarioSpec{});
  j["dimension"] = "style";
  EXPECT_THROW(scenario_from_json(j), InputError);
}

TEST(Scenario, DimensionNames) {
  EXPECT_EQ(parse_dimension("semantics"), Dimension::kSemantics);
  EXPECT_EQ(to_string(Dimension::kSyntax), "syntax");
  EXPECT_THROW(parse_dimension("style"), InputError);
}

}  // namespace
}  // namespace oodsim
