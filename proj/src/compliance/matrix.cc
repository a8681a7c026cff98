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

#include "authlab/compliance/matrix.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace authlab::compliance {
namespace {

using nlohmann::ordered_json;

std::string Line(const ordered_json& record) { return record.dump() + "\n"; }

}  // namespace

std::string_view ToString(CellStatus status) {
  switch (status) {
    case CellStatus::kGraded:
      return "GRADED";
    case CellStatus::kNoFailure:
      return "NO_FAILURE";
    case CellStatus::kUnsupported:
      return "UNSUPPORTED";
    case CellStatus::kError:
      return "ERROR";
  }
  return "?";
}

const MatrixCell* VerdictMatrix::Find(std::string_view scenario, std::string_view profile) const {
  for (const auto& c : cells) {
    if (c.scenario_id == scenario && c.profile == profile) return &c;
  }
  return nullptr;
}

std::string CellText(const MatrixCell& cell) {
  switch (cell.status) {
    case CellStatus::kGraded:
    case CellStatus::kNoFailure:
      return std::string(ToString(cell.summary));
    case CellStatus::kUnsupported:
      return "UNSUPPORTED";
    case CellStatus::kError:
      return "ERROR";
  }
  return "?";
}

std::string RenderText(const VerdictMatrix& matrix) {
  if (matrix.scenarios.empty() || matrix.profiles.empty()) return "";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"scenario"});
  for (const auto& p : matrix.profiles) rows[0].push_back(p);
  for (size_t s = 0; s < matrix.scenarios.size(); ++s) {
    std::vector<std::string> row{matrix.scenarios[s]};
    for (size_t p = 0; p < matrix.profiles.size(); ++p) row.push_back(CellText(matrix.At(s, p)));
    rows.push_back(std::move(row));
  }
  std::vector<size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

std::string VerdictJsonl(const ComplianceVerdict& verdict) {
  std::string out;
  for (const auto& check : verdict.checks) {
    ordered_json record;
    record["kind"] = "check";
    record["scenario_id"] = verdict.scenario_id;
    record["profile"] = verdict.profile;
    record["check_id"] = check.id;
    record["result"] = ToString(check.result);
    record["trace_indices"] = check.evidence.trace_indices;
    record["event_indices"] = check.evidence.event_indices;
    record["detail"] = check.detail;
    out += Line(record);
  }
  ordered_json summary;
  summary["kind"] = "summary";
  summary["scenario_id"] = verdict.scenario_id;
  summary["profile"] = verdict.profile;
  summary["summary_symbol"] = ToString(verdict.summary);
  summary["failures_graded"] = verdict.failures_graded;
  summary["violation"] = verdict.HasViolation();
  out += Line(summary);
  return out;
}

std::string RenderJsonl(const VerdictMatrix& matrix) {
  std::string out;
  for (const auto& cell : matrix.cells) {
    if (cell.verdict) {
      out += VerdictJsonl(*cell.verdict);
      continue;
    }
    ordered_json record;
    record["kind"] = "cell";
    record["scenario_id"] = cell.scenario_id;
    record["profile"] = cell.profile;
    record["status"] = ToString(cell.status);
    if (cell.status == CellStatus::kNoFailure) record["summary_symbol"] = ToString(cell.summary);
    if (!cell.error.empty()) record["error"] = cell.error;
    out += Line(record);
  }
  return out;
}

}  // namespace authlab::compliance
