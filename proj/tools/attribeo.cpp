// Copyright 2026 The Attribeo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attrib/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "attribeo: exact game-theoretic attribution of campaign benefits to "
      "marketing channels"};

  attrib::run_config config;
  std::string format;
  std::string output = "table";
  std::string rules;

  app.add_option("--input", config.input_path, "campaign log (CSV or JSON)")->required();
  app.add_option("--format", format, "input format: csv or json (default: by file extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--rule", rules,
                 "comma-separated rules: shapley, shapley-rep, shapley-order, positions, "
                 "cel, prop")
      ->required();
  app.add_option("--output", output, "report format: table or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_option("--precision", config.precision, "decimal digits in reports (default 6)");
  app.add_flag("--oracle", config.oracle,
               "cross-check Shapley values against the brute-force definition");
  app.add_flag("--verify", config.verify, "run the property checks and report them");
  app.add_option("--max-oracle-n", config.max_oracle_players,
                 "largest player count the brute-force oracle accepts (default 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : attrib::exit_usage;
  }

  if (format == "csv") config.format = attrib::input_format::csv;
  if (format == "json") config.format = attrib::input_format::json;
  config.output = output == "json" ? attrib::output_mode::json : attrib::output_mode::table;

  size_t start = 0;
  while (start <= rules.size()) {
    size_t end = rules.find(',', start);
    if (end == std::string::npos) end = rules.size();
    std::string name = rules.substr(start, end - start);
    if (!name.empty()) {
      auto id = attrib::rule_from_name(name);
      if (!id) {
        std::cerr << "error: unknown rule '" << name << "'\n";
        return attrib::exit_usage;
      }
      config.rules.push_back(*id);
    }
    start = end + 1;
  }

  return attrib::run(config, std::cout, std::cerr);
}
