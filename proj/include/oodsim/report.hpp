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

#ifndef OODSIM_REPORT_HPP_
#define OODSIM_REPORT_HPP_

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "oodsim/evaluation.hpp"

namespace oodsim {

nlohmann::json to_json(const EvalReport& report);
// Throws InputError on schema violations.
EvalReport eval_report_from_json(const nlohmann::json& j);
EvalReport load_eval_report(const std::filesystem::path& path);

// scenario,dimension,metric,value with metrics em, bleu and relative_em
// (empty value when undefined).
std::string metrics_csv(std::span<const EvalReport> reports);
// scenario,element,gen_count,gt_count,ratio,rarity,train_sample_fraction
std::string elements_csv(std::span<const EvalReport> reports);
// scenario,group,bin_lo,bin_hi,count,density
std::string nll_csv(std::span<const EvalReport> reports);

// Mean relative EM per dimension plus the per-scenario rows.
nlohmann::json aggregate_json(std::span<const EvalReport> reports);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace oodsim

#endif  // OODSIM_REPORT_HPP_
