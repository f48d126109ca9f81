// Copyright 2026 The planckangle Authors
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

// planckangle: run, validate and version subcommands.
//
// Exit codes: 0 success, 2 validation failure, 3 computation failure,
// 4 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "planckangle/cli/config.hpp"
#include "planckangle/cli/experiments.hpp"
#include "planckangle/constants.hpp"
#include "planckangle/version.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;
constexpr int kExitIo = 4;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int report_errors(const std::string& path, const planckangle::cli::ParseOutcome& parsed) {
  std::cerr << path << ": " << parsed.errors.size() << " validation error(s)\n";
  for (const auto& e : parsed.errors) std::cerr << "  " << e << "\n";
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = planckangle::cli;

  CLI::App app{"Numerical checks of minimal-angle, indistinguishability and composite-state bounds"};
  app.require_subcommand(1);

  std::string run_path, output_override, format_override;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_path, "Config file")->required();
  run->add_option("--output", output_override, "Results path (overrides output_path)");
  run->add_option("--format", format_override, "csv or json-lines (overrides output_format)")
      ->check(CLI::IsMember({"csv", "json-lines"}));

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", validate_path, "Config file")->required();

  auto* version = app.add_subcommand("version", "Print tool and constants-table versions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (version->parsed()) {
    std::cout << "planckangle " << planckangle::kToolVersion << "\n"
              << "constants " << planckangle::constants().version << " (" << planckangle::constants_hash() << ")\n";
    return 0;
  }

  const std::string& path = validate->parsed() ? validate_path : run_path;
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "cannot read config " << path << "\n";
    return kExitIo;
  }
  const auto parsed = cli::parse_config(text);
  if (!parsed.ok()) return report_errors(path, parsed);

  if (validate->parsed()) {
    std::cout << path << ": ok\n" << cli::echo(*parsed.config);
    return 0;
  }

  cli::ExperimentConfig config = *parsed.config;
  if (!output_override.empty()) config.output_path = output_override;
  if (!format_override.empty()) config.output_format = *cli::parse_format(format_override);

  cli::RunReport report;
  try {
    report = cli::run(config);
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return kExitComputation;
  }
  try {
    cli::write_report(report, config.output_path, config.output_format);
  } catch (const std::exception& e) {
    std::cerr << "I/O failure: " << e.what() << "\n";
    return kExitIo;
  }
  std::cout << "wrote " << config.output_path << " (" << report.table.rows.size() << " rows) in "
            << report.wall_time_s << " s\n";
  return 0;
}
