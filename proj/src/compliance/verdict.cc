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

#include "authlab/compliance/verdict.h"

#include <algorithm>
#include <limits>
#include <set>

namespace authlab::compliance {
namespace {

struct Failure {
  size_t trace_index = 0;
  SimTime timestamp = 0;
  uint16_t handle = 0;
  ErrorCode status = ErrorCode::kAuthenticationFailure;
  bool reported_by_controller = true;
};

const hci::Event* ReceivedEvent(const trace::TracePacket& p) {
  if (p.direction != trace::Direction::kReceived) return nullptr;
  return std::get_if<hci::Event>(&p.packet);
}

const hci::Command* SentCommand(const trace::TracePacket& p) {
  if (p.direction != trace::Direction::kSent) return nullptr;
  return std::get_if<hci::Command>(&p.packet);
}

std::vector<Failure> FindFailures(std::span<const trace::TracePacket> trace) {
  std::vector<Failure> failures;
  std::set<uint16_t> failed_handles;
  for (size_t i = 0; i < trace.size(); ++i) {
    const auto* event = ReceivedEvent(trace[i]);
    if (event == nullptr) continue;
    std::optional<Failure> f;
    if (const auto* e = std::get_if<hci::AuthenticationComplete>(event)) {
      if (e->status != ErrorCode::kSuccess) f = Failure{i, trace[i].timestamp, e->handle, e->status, true};
    } else if (const auto* e = std::get_if<hci::EncryptionChange>(event)) {
      if (!e->enabled) f = Failure{i, trace[i].timestamp, e->handle, e->status, true};
    } else if (const auto* e = std::get_if<hci::DisconnectionComplete>(event)) {
      if (e->reason == ErrorCode::kAuthenticationFailure) {
        f = Failure{i, trace[i].timestamp, e->handle, e->reason, false};
      }
    }
    if (f && failed_handles.insert(f->handle).second) failures.push_back(*f);
  }
  return failures;
}

bool LegitimatelyReset(std::span<const BusEvent> events, const DeviceAddress& dut, SimTime before) {
  for (const auto& e : events) {
    if (e.timestamp >= before) break;
    const auto* deletion = std::get_if<KeyDeletion>(&e.payload);
    if (deletion == nullptr || deletion->cause != DeletionCause::kUserReset) continue;
    if (e.device == dut || deletion->peer == dut) return true;
  }
  return false;
}

void Merge(Check& check, CheckResult result, const Evidence& evidence, const std::string& detail) {
  if (result == CheckResult::kPass) return;
  if (result > check.result) {
    check.result = result;
    check.detail = detail;
  }
  auto& t = check.evidence.trace_indices;
  auto& ev = check.evidence.event_indices;
  t.insert(t.end(), evidence.trace_indices.begin(), evidence.trace_indices.end());
  ev.insert(ev.end(), evidence.event_indices.begin(), evidence.event_indices.end());
}

void Normalize(Evidence& evidence) {
  for (auto* v : {&evidence.trace_indices, &evidence.event_indices}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

std::string Hex(uint8_t v) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  return std::string("0x") + kDigits[v >> 4] + kDigits[v & 0xF];
}

}  // namespace

std::string_view ToString(CheckResult result) {
  switch (result) {
    case CheckResult::kPass:
      return "PASS";
    case CheckResult::kWarning:
      return "WARNING";
    case CheckResult::kViolation:
      return "VIOLATION";
  }
  return "?";
}

std::string_view ToString(SummarySymbol symbol) {
  switch (symbol) {
    case SummarySymbol::kNoIndication:
      return "NO_INDICATION";
    case SummarySymbol::kIndicatorOnly:
      return "INDICATOR_ONLY";
    case SummarySymbol::kErrorText:
      return "ERROR_TEXT";
    case SummarySymbol::kPairingRemoved:
      return "PAIRING_REMOVED";
    case SummarySymbol::kSecurityWarning:
      return "SECURITY_WARNING";
  }
  return "?";
}

std::optional<SummarySymbol> SummarySymbolFromString(std::string_view text) {
  for (auto s : {SummarySymbol::kNoIndication, SummarySymbol::kIndicatorOnly,
                 SummarySymbol::kErrorText, SummarySymbol::kPairingRemoved,
                 SummarySymbol::kSecurityWarning}) {
    if (ToString(s) == text) return s;
  }
  return std::nullopt;
}

bool ComplianceVerdict::HasViolation() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.result == CheckResult::kViolation; });
}

const Check* ComplianceVerdict::Find(std::string_view id) const {
  for (const auto& c : checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

SummarySymbol Summarize(std::span<const BusEvent> events, const DeviceAddress& device) {
  bool warning = false, removed = false, text = false, indicator = false;
  for (const auto& e : events) {
    if (e.device != device) continue;
    const auto* surface = std::get_if<UserSurfaceEvent>(&e.payload);
    if (surface == nullptr) continue;
    switch (surface->kind) {
      case SurfaceKind::kSecurityFailureWarning:
      case SurfaceKind::kRepairConsentPrompt:
        warning = true;
        break;
      case SurfaceKind::kSilentKeyDeletion:
        removed = true;
        break;
      case SurfaceKind::kGenericErrorText:
        text = true;
        break;
      case SurfaceKind::kTransientIndicator:
        indicator = true;
        break;
      case SurfaceKind::kNone:
        break;
    }
  }
  if (warning) return SummarySymbol::kSecurityWarning;
  if (removed) return SummarySymbol::kPairingRemoved;
  if (text) return SummarySymbol::kErrorText;
  if (indicator) return SummarySymbol::kIndicatorOnly;
  return SummarySymbol::kNoIndication;
}

ComplianceVerdict Grade(const GradeInput& input) {
  std::vector<Failure> failures;
  for (const auto& f : FindFailures(input.trace)) {
    if (f.status == ErrorCode::kPinOrKeyMissing &&
        LegitimatelyReset(input.events, input.dut, f.timestamp)) {
      continue;
    }
    failures.push_back(f);
  }
  if (failures.empty()) {
    throw GradeError(GradeErrorKind::kNoFailureInScenario,
                     "scenario '" + input.scenario_id + "' contains no gradeable failure");
  }

  ComplianceVerdict verdict;
  verdict.scenario_id = input.scenario_id;
  verdict.profile = input.profile;
  verdict.failures_graded = failures.size();
  Check c1{std::string(kBondedWarning)}, c2{std::string(kReasonCoding)},
      c3{std::string(kBondedKeyRetention)}, c4{std::string(kTermination)},
      c5{std::string(kTofuWeakening)};

  for (size_t n = 0; n < failures.size(); ++n) {
    const Failure& f = failures[n];
    const SimTime window_end = n + 1 < failures.size() ? failures[n + 1].timestamp
                                                       : std::numeric_limits<SimTime>::max();
    const size_t trace_end = n + 1 < failures.size() ? failures[n + 1].trace_index : input.trace.size();

    std::vector<size_t> warnings, stack_deletions, automatic_pairings;
    for (size_t i = 0; i < input.events.size(); ++i) {
      const auto& e = input.events[i];
      if (e.device != input.dut || e.timestamp < f.timestamp || e.timestamp >= window_end) continue;
      if (const auto* s = std::get_if<UserSurfaceEvent>(&e.payload)) {
        if (s->kind == SurfaceKind::kSecurityFailureWarning) warnings.push_back(i);
      } else if (const auto* d = std::get_if<KeyDeletion>(&e.payload)) {
        if (d->existed && d->bonded && d->cause == DeletionCause::kStack) stack_deletions.push_back(i);
      } else if (const auto* p = std::get_if<PairingInitiated>(&e.payload)) {
        if (p->trigger == PairingTrigger::kAutomatic) automatic_pairings.push_back(i);
      }
    }

    if (input.bonded && warnings.empty()) {
      Merge(c1, CheckResult::kViolation, {{f.trace_index}, {}},
            "no security failure warning for bonded key after " +
                std::string(ToString(f.status)));
    }

    std::optional<size_t> disconnect, disconnected;
    for (size_t i = f.trace_index + 1; i < input.trace.size(); ++i) {
      if (const auto* c = SentCommand(input.trace[i])) {
        const auto* d = std::get_if<hci::Disconnect>(c);
        if (d != nullptr && d->handle == f.handle && !disconnect && i < trace_end) disconnect = i;
      }
      if (const auto* e = ReceivedEvent(input.trace[i])) {
        const auto* d = std::get_if<hci::DisconnectionComplete>(e);
        if (d != nullptr && d->handle == f.handle && !disconnected) disconnected = i;
      }
    }
    if (f.reported_by_controller && disconnect) {
      const auto& d = std::get<hci::Disconnect>(std::get<hci::Command>(input.trace[*disconnect].packet));
      if (d.reason != ErrorCode::kAuthenticationFailure) {
        Merge(c2, CheckResult::kViolation, {{f.trace_index, *disconnect}, {}},
              "disconnect after authentication failure uses reason " +
                  Hex(static_cast<uint8_t>(d.reason)) + " instead of 0x05");
      }
    }

    if (input.bonded && !stack_deletions.empty()) {
      std::string detail = "bonded key deleted without user reset";
      const auto& delta = input.keystore_delta;
      detail += " (key store: " + std::to_string(delta.removed.size()) + " removed, " +
                std::to_string(delta.changed.size()) + " replaced)";
      Merge(c3, CheckResult::kViolation, {{f.trace_index}, stack_deletions}, detail);
    }

    if (f.reported_by_controller && !disconnected) {
      Merge(c4, CheckResult::kViolation, {{f.trace_index}, {}},
            "link still established after failure");
    }

    if (!automatic_pairings.empty()) {
      Merge(c5, CheckResult::kWarning, {{f.trace_index}, automatic_pairings},
            "pairing restarted without user interaction");
    }
  }

  for (auto* c : {&c1, &c2, &c3, &c4, &c5}) {
    Normalize(c->evidence);
    verdict.checks.push_back(std::move(*c));
  }
  verdict.summary = Summarize(input.events, input.dut);
  return verdict;
}

}  // namespace authlab::compliance
