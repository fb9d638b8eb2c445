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

#ifndef OODSIM_JSON_CONFIG_HPP_
#define OODSIM_JSON_CONFIG_HPP_

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace oodsim::cli {

// CLI11 config formatter for JSON files. Top-level keys name global options;
// a nested object keyed by a subcommand name holds that subcommand's options.
// Keys are long option names without dashes, e.g. {"seed": 7, "split":
// {"mask-fraction": 0.5}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                        std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

// Resolved option values of `app` and its parsed subcommands. Values keep
// their command-line spelling. The config option itself is left out.
nlohmann::json resolved_options(const CLI::App* app, bool default_also = true);

}  // namespace oodsim::cli

#endif  // OODSIM_JSON_CONFIG_HPP_
