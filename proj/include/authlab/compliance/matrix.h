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

#include <optional>
#include <string>
#include <vector>

#include "authlab/compliance/verdict.h"

namespace authlab::compliance {

enum class CellStatus : uint8_t {
  kGraded,
  kNoFailure,    // ran, but nothing to grade
  kUnsupported,  // connection type not supported by the profile
  kError,
};

std::string_view ToString(CellStatus status);

struct MatrixCell {
  std::string scenario_id;
  std::string profile;
  CellStatus status = CellStatus::kGraded;
  std::optional<ComplianceVerdict> verdict;
  // Valid for kGraded and kNoFailure.
  SummarySymbol summary = SummarySymbol::kNoIndication;
  std::string error;
};

// Rows are scenarios, columns profiles; cells are stored row-major.
struct VerdictMatrix {
  std::vector<std::string> scenarios;
  std::vector<std::string> profiles;
  std::vector<MatrixCell> cells;

  const MatrixCell& At(size_t scenario, size_t profile) const {
    return cells.at(scenario * profiles.size() + profile);
  }
  const MatrixCell* Find(std::string_view scenario, std::string_view profile) const;
};

// Summary symbol, or UNSUPPORTED / ERROR.
std::string CellText(const MatrixCell& cell);

// Aligned plain-text table with a header row of profile names.
std::string RenderText(const VerdictMatrix& matrix);

// Report lines for one verdict: one "check" record per check, then a
// "summary" record. Every line is a standalone JSON object.
std::string VerdictJsonl(const ComplianceVerdict& verdict);

// Report lines for the whole matrix, cell by cell in row-major order.
// Cells without a verdict produce a single "cell" record.
std::string RenderJsonl(const VerdictMatrix& matrix);

}  // namespace authlab::compliance
