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

#include "authlab/scenario/runner.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>

#include "json.hpp"

namespace authlab::scenario {
namespace {

namespace fs = std::filesystem;

void WriteFile(const std::string& path, std::span<const uint8_t> bytes) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void WriteText(const std::string& path, const std::string& text) {
  WriteFile(path, {reinterpret_cast<const uint8_t*>(text.data()), text.size()});
}

compliance::MatrixCell RunCell(const ScenarioConfig& config, const std::string& profile_name,
                               const RunOptions& options) {
  compliance::MatrixCell cell{config.id, profile_name};
  try {
    ScenarioRun run = RunWithProfile(profile_name, config, options);
    if (run.verdict) {
      cell.status = compliance::CellStatus::kGraded;
      cell.summary = run.verdict->summary;
      cell.verdict = std::move(run.verdict);
    } else {
      cell.status = compliance::CellStatus::kNoFailure;
      cell.summary = compliance::Summarize(run.result.events,
                                           config.FindDevice(config.dut)->address);
    }
  } catch (const UnsupportedError& e) {
    cell.status = compliance::CellStatus::kUnsupported;
    cell.error = e.what();
  } catch (const std::exception& e) {
    cell.status = compliance::CellStatus::kError;
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

std::optional<compliance::ComplianceVerdict> GradeResult(const ScenarioConfig& config,
                                                         const ScenarioResult& result) {
  compliance::GradeInput input;
  input.scenario_id = config.id;
  input.profile = result.dut_profile;
  input.dut = config.FindDevice(config.dut)->address;
  for (const auto& p : config.pairings) {
    if (p.a == config.dut || p.b == config.dut) {
      input.key_type = p.key_type;
      input.bonded = p.bonded;
      break;
    }
  }
  input.trace = result.dut_trace();
  input.events = result.events;
  input.keystore_delta = result.DutDelta();
  try {
    return compliance::Grade(input);
  } catch (const compliance::GradeError&) {
    return std::nullopt;
  }
}

ScenarioRun Execute(const ScenarioConfig& config, const RunOptions& options) {
  ScenarioRun run{Simulate(config, options), std::nullopt};
  run.verdict = GradeResult(config, run.result);
  return run;
}

ScenarioRun RunWithProfile(const profiles::StackProfile& profile, const ScenarioConfig& config,
                           RunOptions options) {
  options.dut_profile = profile;
  return Execute(config, options);
}

ScenarioRun RunWithProfile(std::string_view profile_name, const ScenarioConfig& config,
                           RunOptions options) {
  const auto registry = ScenarioProfiles(config);
  const auto* profile = registry.Find(profile_name);
  if (profile == nullptr) {
    throw UnknownProfileError("unknown profile '" + std::string(profile_name) + "'");
  }
  return RunWithProfile(*profile, config, std::move(options));
}

std::string CompanionTracePath(const std::string& dut_path, const std::string& device) {
  fs::path p(dut_path);
  fs::path companion = p.parent_path() / (p.stem().string() + "." + device + ".btsnoop");
  return companion.string();
}

std::vector<std::string> WriteTraces(const ScenarioResult& result, const std::string& dut_path) {
  std::vector<std::string> written;
  WriteFile(dut_path, trace::WriteTrace(result.dut_trace()));
  written.push_back(dut_path);
  for (const auto& [name, capture] : result.captures) {
    if (name == result.dut) continue;
    std::string path = CompanionTracePath(dut_path, name);
    WriteFile(path, trace::WriteTrace(capture));
    written.push_back(path);
  }
  return written;
}

std::string ReportJsonl(const ScenarioRun& run) {
  if (run.verdict) return compliance::VerdictJsonl(*run.verdict);
  nlohmann::ordered_json record;
  record["kind"] = "cell";
  record["scenario_id"] = run.result.scenario_id;
  record["profile"] = run.result.dut_profile;
  record["status"] = ToString(compliance::CellStatus::kNoFailure);
  return record.dump() + "\n";
}

int RunScenario(const ScenarioConfig& config, const OutputOverrides& overrides,
                std::ostream& out, std::ostream& err) {
  RunOptions options;
  options.seed_override = overrides.seed_override;
  ScenarioRun run;
  try {
    run = Execute(config, options);
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const profiles::ProfileError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  std::string trace_out = overrides.trace_out.value_or(config.trace_out);
  std::string report_out = overrides.report_out.value_or(config.report_out);
  if (!trace_out.empty()) {
    for (const auto& path : WriteTraces(run.result, trace_out)) out << "trace: " << path << "\n";
  }
  std::string report = ReportJsonl(run);
  if (!report_out.empty()) {
    WriteText(report_out, report);
    out << "report: " << report_out << "\n";
  }

  out << "scenario " << config.id << " (" << run.result.dut_profile << "): ";
  if (!run.verdict) {
    out << "no failure to grade\n";
    return kExitNoViolation;
  }
  out << ToString(run.verdict->summary) << "\n";
  for (const auto& check : run.verdict->checks) {
    out << "  " << check.id << " " << ToString(check.result);
    if (!check.detail.empty()) out << "  " << check.detail;
    out << "\n";
  }
  return run.HasViolation() ? kExitViolation : kExitNoViolation;
}

int RunScenarioFile(const std::string& path, const OutputOverrides& overrides,
                    std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    config = LoadConfig(path);
  } catch (const ConfigError& e) {
    err << path << ": " << e.what() << "\n";
    return kExitConfigError;
  }
  return RunScenario(config, overrides, out, err);
}

std::vector<ScenarioConfig> LoadScenarioDir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ScenarioConfig> configs;
  for (const auto& f : files) configs.push_back(LoadConfig(f.string()));
  return configs;
}

compliance::VerdictMatrix RunMatrix(const std::vector<ScenarioConfig>& scenarios,
                                    const std::vector<std::string>& profiles,
                                    const RunOptions& options, bool parallel) {
  compliance::VerdictMatrix matrix;
  matrix.profiles = profiles;
  for (const auto& s : scenarios) matrix.scenarios.push_back(s.id);

  if (!parallel) {
    for (const auto& s : scenarios) {
      for (const auto& p : profiles) matrix.cells.push_back(RunCell(s, p, options));
    }
    return matrix;
  }
  // Every cell owns its whole world; nothing mutable is shared.
  std::vector<std::future<compliance::MatrixCell>> pending;
  for (const auto& s : scenarios) {
    for (const auto& p : profiles) {
      pending.push_back(std::async(std::launch::async, RunCell, std::cref(s), std::cref(p),
                                   std::cref(options)));
    }
  }
  for (auto& f : pending) matrix.cells.push_back(f.get());
  return matrix;
}

}  // namespace authlab::scenario
