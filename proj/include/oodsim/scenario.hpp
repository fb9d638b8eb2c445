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

#ifndef OODSIM_SCENARIO_HPP_
#define OODSIM_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oodsim/corpus.hpp"
#include "oodsim/distribution.hpp"
#include "oodsim/elements.hpp"

namespace oodsim {

enum class Dimension { kComplexity, kSyntax, kSemantics };

std::string_view to_string(Dimension dimension);
Dimension parse_dimension(std::string_view name);  // throws InputError

using ScenarioParams =
    std::variant<ComplexityRange, std::vector<ElementKind>, std::vector<int>>;

// Description of the property set to exclude from training.
struct ScenarioSpec {
  std::string name;
  Dimension dimension = Dimension::kComplexity;
  // ComplexityRange for complexity, element kinds for syntax, cluster ids for
  // semantics.
  ScenarioParams params = ComplexityRange{};
  std::optional<Basis> basis;  // defaults from the task
  // 1.0 masks every property-matching train sample; 0.5 is the
  // generalization setting.
  double mask_fraction = 1.0;
  std::uint64_t seed = 0;
};

// Throws InputError when params do not match the dimension or the mask
// fraction is outside (0, 1].
void validate(const ScenarioSpec& spec);

// e.g. "complexity_97-100", "syntax_while_statement", "semantics_c3+c7",
// with a "_m50" suffix for a 0.5 mask fraction.
std::string default_scenario_name(const ScenarioSpec& spec);

nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

}  // namespace oodsim

#endif  // OODSIM_SCENARIO_HPP_
