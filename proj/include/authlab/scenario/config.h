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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authlab/attack/fault_injector.h"
#include "authlab/core/address.h"
#include "authlab/core/types.h"
#include "authlab/host/failure_policy.h"
#include "authlab/profiles/stack_profile.h"

namespace authlab::scenario {

enum class DeviceRole : uint8_t { kHost, kPeripheral, kMitm };

std::string_view ToString(DeviceRole role);

struct DeviceConfig {
  std::string name;
  DeviceAddress address;
  DeviceRole role = DeviceRole::kHost;
  // Host profile; peripherals default to "peripheral".
  std::string profile;
  // Overrides the option a spec-compliant profile picks for non-bonded keys.
  std::optional<host::OptionPolicy> option;
  friend bool operator==(const DeviceConfig&, const DeviceConfig&) = default;
};

struct PairingConfig {
  std::string a;
  std::string b;
  KeyType key_type = KeyType::kAuthenticated;
  bool bonded = true;
  Transport transport = Transport::kBtClassic;
  bool via_mitm = false;
  // Shared key, or K_AM for pairings made through the attacker.
  std::optional<LinkKey> key;
  // K_MB for pairings made through the attacker.
  std::optional<LinkKey> key_b;
  friend bool operator==(const PairingConfig&, const PairingConfig&) = default;
};

enum class StepKind : uint8_t {
  kConnect,
  kReconnect,
  kInjectFault,
  kMitmPresent,
  kUserReset,
  kUserConsent,
};

std::string_view ToString(StepKind kind);

struct FaultSpec {
  attack::TargetCommand target = attack::TargetCommand::kLinkKeyRequestReply;
  std::optional<std::string> peer;  // device name
  LinkKey key;
  // Defaults to [own step index, open end).
  std::optional<attack::StepWindow> window;
  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

struct Step {
  StepKind kind = StepKind::kConnect;
  // kConnect: initiator / responder. kInjectFault: device. kUserReset:
  // device / peer.
  std::string device;
  std::string peer;
  std::optional<Transport> transport;  // kConnect
  FaultSpec fault;                     // kInjectFault
  bool flag = false;                   // kMitmPresent: present; kUserConsent: accept
  friend bool operator==(const Step&, const Step&) = default;
};

struct ScenarioConfig {
  std::string id;
  std::optional<uint64_t> seed;
  std::string dut;
  std::vector<DeviceConfig> devices;
  std::vector<profiles::StackProfile> profiles;  // scenario-local profiles
  std::vector<PairingConfig> pairings;
  std::vector<Step> script;
  std::string trace_out;
  std::string report_out;

  const DeviceConfig* FindDevice(std::string_view name) const;
  const PairingConfig* FindPairing(std::string_view a, std::string_view b) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// CONFIG_INVALID: `location` is "line N" for parse errors and a field path
// such as "script[3].device" for semantic errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// Parses and validates. Throws ConfigError.
ScenarioConfig ParseConfig(std::string_view text);
ScenarioConfig LoadConfig(const std::string& path);

// Canonical text form; ParseConfig(SerializeConfig(c)) == c for valid c.
std::string SerializeConfig(const ScenarioConfig& config);

// One "profile ..." line, without the trailing newline.
std::string SerializeProfile(const profiles::StackProfile& profile);

// Semantic checks (references, seed, MitM requirements). Profile names are
// checked against `known_profiles` plus the scenario-local ones.
void Validate(const ScenarioConfig& config, const std::vector<std::string>& known_profiles);

// Profile actually used by a device (peripheral default applied).
std::string EffectiveProfile(const DeviceConfig& device);

}  // namespace authlab::scenario
