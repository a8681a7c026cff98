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
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/rng.h"
#include "authlab/core/types.h"
#include "authlab/hci/packet.h"

namespace authlab::linklayer {

enum class LinkState : uint8_t {
  kIdle,
  kConnected,
  kAuthenticating,
  kEncrypted,
  kDetached,
};

std::string_view ToString(LinkState state);

// One baseband/LE link between two controllers. Addresses are the ones each
// side presents over the air, which for an impersonating attacker are not
// its own.
class Connection {
 public:
  Connection(uint16_t handle, DeviceAddress initiator, DeviceAddress responder,
             Transport transport)
      : handle_(handle),
        initiator_(initiator),
        responder_(responder),
        transport_(transport),
        state_(LinkState::kConnected) {}

  uint16_t handle() const { return handle_; }
  const DeviceAddress& initiator() const { return initiator_; }
  const DeviceAddress& responder() const { return responder_; }
  Transport transport() const { return transport_; }
  LinkState state() const { return state_; }
  // Present iff state() == kDetached.
  std::optional<ErrorCode> detach_reason() const { return detach_reason_; }

 private:
  friend class LinkOps;

  uint16_t handle_;
  DeviceAddress initiator_;
  DeviceAddress responder_;
  Transport transport_;
  LinkState state_;
  std::optional<ErrorCode> detach_reason_;
};

class InvalidStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// HCI events each controller hands to its own host.
struct HostDeliveries {
  std::vector<hci::Event> to_initiator;
  std::vector<hci::Event> to_responder;
};

struct AuthOutcome {
  ErrorCode status = ErrorCode::kSuccess;
  HostDeliveries deliveries;
};

struct EncryptionOutcome {
  ErrorCode status = ErrorCode::kSuccess;
  bool enabled = false;
  HostDeliveries deliveries;
};

class LinkOps {
 public:
  // Mutual challenge-response over a BR/EDR link. A missing key on either
  // side (negative link key reply) yields kPinOrKeyMissing. Only the
  // initiator's host learns the authentication status.
  static AuthOutcome RunBtAuthentication(Connection& conn,
                                         const std::optional<LinkKey>& initiator_key,
                                         const std::optional<LinkKey>& responder_key,
                                         ScenarioRng& rng);

  // LE encryption start: both sides derive a confirmation tag from their
  // LTK and a shared nonce.
  static EncryptionOutcome RunBleEncryptionStart(Connection& conn,
                                                 const LinkKey& initiator_ltk,
                                                 const LinkKey& responder_ltk,
                                                 ScenarioRng& rng);

  // Tears the link down. `reason` reaches both hosts unchanged.
  static HostDeliveries Detach(Connection& conn, ErrorCode reason);
};

}  // namespace authlab::linklayer
