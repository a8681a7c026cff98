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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "authlab/attack/mitm.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/key_store.h"
#include "authlab/linklayer/connection.h"
#include "authlab/profiles/stack_profile.h"
#include "authlab/scenario/config.h"
#include "authlab/trace/btsnoop.h"

namespace authlab::scenario {

// A connect step the device's stack cannot carry (e.g. LE on a BR/EDR-only
// profile).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinkSummary {
  uint16_t handle = 0;
  DeviceAddress initiator;  // as presented over the air
  DeviceAddress responder;
  Transport transport = Transport::kBtClassic;
  size_t step = 0;
  attack::Route route = attack::Route::kDirect;
  linklayer::LinkState state = linklayer::LinkState::kIdle;
  bool reached_encryption = false;
  std::optional<ErrorCode> detach_reason;
};

struct ScenarioResult {
  std::string scenario_id;
  std::string dut;
  std::string dut_profile;
  // HCI capture per non-attacker device name.
  std::map<std::string, std::vector<trace::TracePacket>> captures;
  std::vector<BusEvent> events;
  // Device name -> key store contents.
  std::map<std::string, std::vector<LinkKeyRecord>> stores_before;
  std::map<std::string, std::vector<LinkKeyRecord>> stores_after;
  std::vector<LinkKeyRecord> mitm_store;
  std::vector<LinkSummary> links;
  size_t consents_executed = 0;
  std::vector<std::string> rejected_commands;

  const std::vector<trace::TracePacket>& dut_trace() const { return captures.at(dut); }
  KeyStoreDelta DutDelta() const { return Diff(stores_before.at(dut), stores_after.at(dut)); }
};

struct RunOptions {
  std::optional<uint64_t> seed_override;
  // Replaces the DUT's profile.
  std::optional<profiles::StackProfile> dut_profile;
};

// Executes the script on a single-threaded scheduler. The config must be
// valid. Throws UnsupportedError and profiles::ProfileError.
ScenarioResult Simulate(const ScenarioConfig& config, const RunOptions& options = {});

// Registry of built-in plus scenario-local profiles.
profiles::ProfileRegistry ScenarioProfiles(const ScenarioConfig& config);

}  // namespace authlab::scenario
