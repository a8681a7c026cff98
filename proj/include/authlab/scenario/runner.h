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

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authlab/compliance/matrix.h"
#include "authlab/compliance/verdict.h"
#include "authlab/scenario/config.h"
#include "authlab/scenario/simulation.h"

namespace authlab::scenario {

inline constexpr int kExitNoViolation = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfigError = 2;

class UnknownProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScenarioRun {
  ScenarioResult result;
  // Empty when the scenario contained no gradeable failure.
  std::optional<compliance::ComplianceVerdict> verdict;

  bool HasViolation() const { return verdict && verdict->HasViolation(); }
};

// Grades the DUT's capture against the key type and bonding of its first
// declared pairing.
std::optional<compliance::ComplianceVerdict> GradeResult(const ScenarioConfig& config,
                                                         const ScenarioResult& result);

ScenarioRun Execute(const ScenarioConfig& config, const RunOptions& options = {});

// Runs the scenario with `profile` in place of the DUT's own.
ScenarioRun RunWithProfile(const profiles::StackProfile& profile, const ScenarioConfig& config,
                           RunOptions options = {});
// Throws UnknownProfileError.
ScenarioRun RunWithProfile(std::string_view profile_name, const ScenarioConfig& config,
                           RunOptions options = {});

// "<stem>.<device>.btsnoop" next to `dut_path`.
std::string CompanionTracePath(const std::string& dut_path, const std::string& device);

// Writes the DUT capture to `dut_path` and every other device's capture
// next to it. Returns the paths written, DUT first.
std::vector<std::string> WriteTraces(const ScenarioResult& result, const std::string& dut_path);

// JSONL verdict report; a run without failures yields one "cell" record.
std::string ReportJsonl(const ScenarioRun& run);

struct OutputOverrides {
  std::optional<std::string> trace_out;
  std::optional<std::string> report_out;
  std::optional<uint64_t> seed_override;
};

// Runs, writes the configured outputs and returns the exit status. A short
// human-readable summary goes to `out`, diagnostics to `err`.
int RunScenario(const ScenarioConfig& config, const OutputOverrides& overrides,
                std::ostream& out, std::ostream& err);
// Same, loading the config first. Config errors give kExitConfigError.
int RunScenarioFile(const std::string& path, const OutputOverrides& overrides,
                    std::ostream& out, std::ostream& err);

// *.cfg files of a directory, sorted by file name. Throws ConfigError.
std::vector<ScenarioConfig> LoadScenarioDir(const std::string& dir);

// Cross product of scenarios and profiles; cells run concurrently when
// `parallel` is set, with identical output either way.
compliance::VerdictMatrix RunMatrix(const std::vector<ScenarioConfig>& scenarios,
                                    const std::vector<std::string>& profiles,
                                    const RunOptions& options = {}, bool parallel = true);

}  // namespace authlab::scenario
