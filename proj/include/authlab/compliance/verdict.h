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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authlab/core/event_bus.h"
#include "authlab/core/key_store.h"
#include "authlab/core/types.h"
#include "authlab/trace/btsnoop.h"

namespace authlab::compliance {

enum class CheckResult : uint8_t { kPass, kWarning, kViolation };

std::string_view ToString(CheckResult result);

// What the user of one device saw after a failure, reduced to one symbol.
enum class SummarySymbol : uint8_t {
  kNoIndication,
  kIndicatorOnly,
  kErrorText,
  kPairingRemoved,
  kSecurityWarning,
};

std::string_view ToString(SummarySymbol symbol);
std::optional<SummarySymbol> SummarySymbolFromString(std::string_view text);

struct Evidence {
  std::vector<size_t> trace_indices;  // records of the graded device's capture
  std::vector<size_t> event_indices;  // EventBus indices
  bool empty() const { return trace_indices.empty() && event_indices.empty(); }
  friend bool operator==(const Evidence&, const Evidence&) = default;
};

// Check identifiers.
inline constexpr std::string_view kBondedWarning = "C1";
inline constexpr std::string_view kReasonCoding = "C2";
inline constexpr std::string_view kBondedKeyRetention = "C3";
inline constexpr std::string_view kTermination = "C4";
inline constexpr std::string_view kTofuWeakening = "C5";

struct Check {
  std::string id;
  CheckResult result = CheckResult::kPass;
  Evidence evidence;
  std::string detail;
  friend bool operator==(const Check&, const Check&) = default;
};

struct ComplianceVerdict {
  std::string scenario_id;
  std::string profile;
  std::vector<Check> checks;  // C1..C5 in order
  SummarySymbol summary = SummarySymbol::kNoIndication;
  size_t failures_graded = 0;

  bool HasViolation() const;
  const Check* Find(std::string_view id) const;
  friend bool operator==(const ComplianceVerdict&, const ComplianceVerdict&) = default;
};

struct GradeInput {
  std::string scenario_id;
  std::string profile;
  DeviceAddress dut;
  // The graded device's key for its peer, as initially paired.
  KeyType key_type = KeyType::kAuthenticated;
  bool bonded = true;
  // HCI capture at the graded device.
  std::span<const trace::TracePacket> trace;
  std::span<const BusEvent> events;
  KeyStoreDelta keystore_delta;
};

enum class GradeErrorKind { kNoFailureInScenario };

class GradeError : public std::runtime_error {
 public:
  GradeError(GradeErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  GradeErrorKind kind() const { return kind_; }

 private:
  GradeErrorKind kind_;
};

// Derived from the device's user surface events only.
SummarySymbol Summarize(std::span<const BusEvent> events, const DeviceAddress& device);

// Grades every authentication or encryption failure seen by the device.
// PIN_OR_KEY_MISSING after a user reset of the pairing is not graded.
ComplianceVerdict Grade(const GradeInput& input);

}  // namespace authlab::compliance
