/*
 * Copyright 2026 The authlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: runs scenario files and verdict matrices.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "authlab/compliance/matrix.h"
#include "authlab/profiles/stack_profile.h"
#include "authlab/scenario/config.h"
#include "authlab/scenario/runner.h"
#include "authlab/trace/btsnoop.h"

namespace {

using namespace authlab;

int ListProfiles() {
  const auto registry = profiles::BuiltinProfiles();
  for (const auto& p : registry.profiles()) {
    std::cout << scenario::SerializeProfile(p) << "\n";
  }
  return 0;
}

int Matrix(const std::string& dir, const std::vector<std::string>& profile_filter,
           const std::optional<std::string>& report_out, std::optional<uint64_t> seed,
           bool serial) {
  std::vector<scenario::ScenarioConfig> configs;
  try {
    configs = scenario::LoadScenarioDir(dir);
  } catch (const scenario::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scenario::kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scenario::kExitConfigError;
  }
  std::vector<std::string> names =
      profile_filter.empty() ? profiles::BuiltinProfiles().Names() : profile_filter;
  scenario::RunOptions options;
  options.seed_override = seed;
  auto matrix = scenario::RunMatrix(configs, names, options, !serial);
  std::cout << compliance::RenderText(matrix);
  if (report_out) {
    std::ofstream out(*report_out, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << *report_out << "\n";
      return scenario::kExitConfigError;
    }
    out << compliance::RenderJsonl(matrix);
  }
  return 0;
}

// One line per record: sim time, direction, decoded packet.
int Dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return scenario::kExitConfigError;
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  try {
    for (const auto& p : trace::ReadTrace(bytes)) {
      std::cout << p.timestamp << (p.direction == trace::Direction::kSent ? " > " : " < ")
                << hci::Describe(p.packet) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return scenario::kExitConfigError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bluetooth authentication-failure handling lab"};
  app.require_subcommand(0, 1);

  bool list_profiles = false;
  app.add_flag("--list-profiles", list_profiles, "Print the built-in stack profiles");

  std::string config_path;
  scenario::OutputOverrides overrides;
  auto* run = app.add_subcommand("run", "Run one scenario and grade the device under test");
  run->add_option("config", config_path, "Scenario file")->required();
  run->add_option("--trace-out", overrides.trace_out, "btsnoop path for the DUT capture");
  run->add_option("--report-out", overrides.report_out, "JSONL verdict report path");
  run->add_option("--seed-override", overrides.seed_override, "Replace the scenario seed");

  std::string dir;
  std::vector<std::string> profile_filter;
  std::optional<std::string> matrix_report;
  std::optional<uint64_t> matrix_seed;
  bool serial = false;
  auto* matrix = app.add_subcommand("matrix", "Run every scenario in a directory under each profile");
  matrix->add_option("dir", dir, "Directory of *.cfg scenario templates")->required();
  matrix->add_option("--profiles", profile_filter, "Profiles to use (default: all built-in)")
      ->delimiter(',');
  matrix->add_option("--report-out", matrix_report, "JSONL report path");
  matrix->add_option("--seed-override", matrix_seed, "Replace every scenario seed");
  matrix->add_flag("--serial", serial, "Run cells one after another");

  std::string dump_path;
  auto* dump = app.add_subcommand("dump", "Print the decoded records of a btsnoop file");
  dump->add_option("trace", dump_path, "btsnoop file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : scenario::kExitConfigError;
  }

  if (list_profiles) return ListProfiles();
  if (*run) return scenario::RunScenarioFile(config_path, overrides, std::cout, std::cerr);
  if (*dump) return Dump(dump_path);
  if (*matrix) return Matrix(dir, profile_filter, matrix_report, matrix_seed, serial);
  std::cout << app.help();
  return 0;
}
