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
#include <string_view>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/key_store.h"
#include "authlab/core/types.h"

namespace authlab::host {

// Actions the core specification prescribes when authentication fails with
// an existing link key.
enum class FailureAction : uint8_t {
  kNotifySecurityFailure,
  kAutoRepair,         // initiate pairing / SSP without asking
  kAskUserThenRepair,  // notify the user and ask whether to pair again
};

std::string_view ToString(FailureAction action);

// Choice between the two options offered for non-bonded keys.
enum class OptionPolicy : uint8_t { kRecommended, kOption1, kOption2 };

std::string_view ToString(OptionPolicy policy);
std::optional<OptionPolicy> OptionPolicyFromString(std::string_view text);

struct FailureDecision {
  KeyType key_type = KeyType::kCombination;
  bool bonded = false;
  FailureAction action = FailureAction::kNotifySecurityFailure;
  // Whether `action` is the recommended choice for this row.
  bool recommended = true;
  friend bool operator==(const FailureDecision&, const FailureDecision&) = default;
};

//   key type         bonded  option 1            option 2
//   Combination      no      auto pairing        ask user (recommended)
//   Combination      yes     notify security failure
//   Unauthenticated  no      auto SSP (rec.)     ask user
//   Unauthenticated  yes     notify security failure
//   Authenticated    no      auto SSP            ask user (recommended)
//   Authenticated    yes     notify security failure
FailureDecision DecideFailureAction(KeyType key_type, bool bonded,
                                    OptionPolicy policy = OptionPolicy::kRecommended);

// What a host knows when a failure reaches it.
struct FailureContext {
  DeviceAddress peer;
  Transport transport = Transport::kBtClassic;
  ErrorCode status = ErrorCode::kAuthenticationFailure;
  // The host's own record for the peer when the failure arrived.
  std::optional<LinkKeyRecord> record;
  // True when the host's controller reported the failure (authentication
  // or encryption event); false when the host only saw the disconnect.
  bool reported_by_controller = true;
};

enum class RepairMode : uint8_t { kNone, kAutomatic, kAskUser };

struct FailureReaction {
  // Reason for the DISCONNECT the host issues; nullopt leaves the link up.
  std::optional<ErrorCode> disconnect_reason;
  std::vector<UserSurfaceEvent> surface;
  bool delete_key = false;
  RepairMode repair = RepairMode::kNone;
};

// How a host stack reacts to authentication and encryption failures.
class HostPolicy {
 public:
  virtual ~HostPolicy() = default;
  virtual std::string name() const = 0;
  virtual FailureReaction OnFailure(const FailureContext& context) const = 0;
  virtual bool SupportsTransport(Transport) const { return true; }
};

// Behaves as the core specification prescribes.
class ReferencePolicy final : public HostPolicy {
 public:
  explicit ReferencePolicy(OptionPolicy option = OptionPolicy::kRecommended)
      : option_(option) {}

  std::string name() const override { return "reference"; }
  FailureReaction OnFailure(const FailureContext& context) const override;
  OptionPolicy option() const { return option_; }

 private:
  OptionPolicy option_;
};

}  // namespace authlab::host
