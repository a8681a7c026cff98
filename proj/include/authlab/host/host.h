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
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/key_store.h"
#include "authlab/hci/packet.h"
#include "authlab/host/failure_policy.h"

namespace authlab::host {

struct RepairRequest {
  DeviceAddress peer;
  Transport transport = Transport::kBtClassic;
  RepairMode mode = RepairMode::kNone;
  friend bool operator==(const RepairRequest&, const RepairRequest&) = default;
};

// Everything a host produces while handling one input.
struct HostOutput {
  std::vector<hci::Command> commands;
  std::vector<UserSurfaceEvent> surface;
  std::optional<RepairRequest> repair;
};

// Host stack state machine. Stores keys in the device's key store, answers
// controller key requests and applies its HostPolicy to failures.
class Host {
 public:
  Host(DeviceAddress self, KeyStore& store, const HostPolicy& policy)
      : self_(self), store_(store), policy_(&policy) {}

  const DeviceAddress& address() const { return self_; }
  const HostPolicy& policy() const { return *policy_; }
  KeyStore& store() { return store_; }
  const KeyStore& store() const { return store_; }

  // Registers a new link; the initiator then calls StartSecurity.
  void OnConnected(uint16_t handle, const DeviceAddress& peer, Transport transport,
                   bool initiator);

  // AUTHENTICATION_REQUESTED for BR/EDR, LE_ENABLE_ENCRYPTION with the
  // stored LTK for LE. Without an LTK the LE link fails locally with
  // PIN_OR_KEY_MISSING.
  HostOutput StartSecurity(uint16_t handle);

  // Single reply per request: the stored key or a negative reply.
  hci::Command OnLinkKeyRequest(const DeviceAddress& peer) const;

  HostOutput OnAuthenticationFailure(uint16_t handle, ErrorCode status);

  HostOutput HandleEvent(const hci::Event& event);

  std::optional<LinkKey> LongTermKey(const DeviceAddress& peer) const;

  // Bonding flag applied to the next key notified for `peer`.
  void ExpectPairing(const DeviceAddress& peer, bool bond) { pending_bond_[peer] = bond; }
  void StorePairing(const LinkKeyRecord& record) { store_.Put(record); }

  bool IsConnected(uint16_t handle) const;
  bool HasFailed(uint16_t handle) const;
  size_t failures_handled() const { return failures_handled_; }

 private:
  struct Link {
    DeviceAddress peer;
    Transport transport = Transport::kBtClassic;
    bool initiator = false;
    bool failed = false;
    bool disconnect_sent = false;
  };

  HostOutput HandleFailure(uint16_t handle, Link& link, ErrorCode status,
                           bool reported_by_controller);

  DeviceAddress self_;
  KeyStore& store_;
  const HostPolicy* policy_;
  std::map<uint16_t, Link> links_;
  std::map<DeviceAddress, bool> pending_bond_;
  size_t failures_handled_ = 0;
};

}  // namespace authlab::host
