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
#include <string>
#include <variant>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/sim_clock.h"
#include "authlab/core/types.h"

namespace authlab {

// What the user of a device observed.
enum class SurfaceKind : uint8_t {
  kSecurityFailureWarning,
  kRepairConsentPrompt,
  kGenericErrorText,
  kTransientIndicator,
  kSilentKeyDeletion,
  kNone,
};

std::string_view ToString(SurfaceKind kind);

struct UserSurfaceEvent {
  SurfaceKind kind = SurfaceKind::kNone;
  DeviceAddress peer;
  std::string text;  // only for kGenericErrorText
  friend bool operator==(const UserSurfaceEvent&, const UserSurfaceEvent&) = default;
};

enum class DeletionCause : uint8_t { kStack, kUserReset };

struct KeyDeletion {
  DeviceAddress peer;
  Transport transport = Transport::kBtClassic;
  bool existed = false;
  bool bonded = false;
  DeletionCause cause = DeletionCause::kStack;
  friend bool operator==(const KeyDeletion&, const KeyDeletion&) = default;
};

struct InjectionAudit {
  size_t rule_index = 0;
  uint16_t opcode = 0;
  DeviceAddress peer;
  LinkKey original;
  LinkKey replacement;
  size_t step = 0;
  // Replacement equal to the original key; the packet was left untouched.
  bool noop = false;
  friend bool operator==(const InjectionAudit&, const InjectionAudit&) = default;
};

enum class PairingTrigger : uint8_t {
  kAutomatic,    // host-initiated without asking anyone
  kUserConsent,  // after an accepted consent prompt
  kScripted,     // declared by the scenario
};

std::string_view ToString(PairingTrigger trigger);

struct PairingInitiated {
  DeviceAddress peer;
  Transport transport = Transport::kBtClassic;
  PairingTrigger trigger = PairingTrigger::kAutomatic;
  friend bool operator==(const PairingInitiated&, const PairingInitiated&) = default;
};

struct PairingCompleted {
  DeviceAddress peer;
  Transport transport = Transport::kBtClassic;
  KeyType key_type = KeyType::kUnauthenticated;
  bool bonded = false;
  bool via_mitm = false;
  friend bool operator==(const PairingCompleted&, const PairingCompleted&) = default;
};

struct ConsentResolved {
  DeviceAddress peer;
  bool accepted = false;
  friend bool operator==(const ConsentResolved&, const ConsentResolved&) = default;
};

using BusPayload = std::variant<UserSurfaceEvent, KeyDeletion, InjectionAudit,
                                PairingInitiated, PairingCompleted,
                                ConsentResolved>;

struct BusEvent {
  SimTime timestamp = 0;
  DeviceAddress device;  // the device the event happened on
  BusPayload payload;
  friend bool operator==(const BusEvent&, const BusEvent&) = default;
};

// Append-only audit log shared by every node of a scenario. Event indices
// are stable and used as evidence references.
class EventBus {
 public:
  size_t Publish(SimTime timestamp, const DeviceAddress& device,
                 BusPayload payload);

  const std::vector<BusEvent>& events() const { return events_; }
  size_t size() const { return events_.size(); }

  template <typename T>
  std::vector<size_t> IndicesOf(const std::optional<DeviceAddress>& device =
                                    std::nullopt) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < events_.size(); ++i) {
      if (!std::holds_alternative<T>(events_[i].payload)) continue;
      if (device && events_[i].device != *device) continue;
      out.push_back(i);
    }
    return out;
  }

 private:
  std::vector<BusEvent> events_;
};

}  // namespace authlab
