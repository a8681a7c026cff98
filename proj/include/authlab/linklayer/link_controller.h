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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "authlab/core/rng.h"
#include "authlab/core/sim_clock.h"
#include "authlab/hci/packet.h"
#include "authlab/linklayer/connection.h"

namespace authlab::linklayer {

// Host side of one controller's HCI transport.
class HostPort {
 public:
  virtual ~HostPort() = default;
  virtual void OnEvent(const hci::Event& event) = 0;
  // LTK the host hands its controller when an LE peer starts encryption.
  virtual std::optional<LinkKey> LongTermKey(const DeviceAddress& peer) = 0;
};

enum class Side : uint8_t { kInitiator, kResponder };

// Both controllers of a single connection plus the air link between them.
// Commands are processed and events delivered through the scheduler, in
// submission order.
class LinkController {
 public:
  LinkController(Connection connection, HostPort& initiator, HostPort& responder,
                 Scheduler& scheduler, ScenarioRng& rng);

  LinkController(const LinkController&) = delete;
  LinkController& operator=(const LinkController&) = delete;

  void Submit(Side from, hci::Command command);

  const Connection& connection() const { return connection_; }
  // Commands dropped because the link was in the wrong state.
  const std::vector<std::string>& rejected() const { return rejected_; }

 private:
  void Process(Side from, const hci::Command& command);
  void OnLinkKeyReply(Side from, std::optional<LinkKey> key);
  void Deliver(const HostDeliveries& deliveries);
  void DeliverTo(Side side, const hci::Event& event);
  HostPort& PortOf(Side side) { return side == Side::kInitiator ? initiator_ : responder_; }

  Connection connection_;
  HostPort& initiator_;
  HostPort& responder_;
  Scheduler& scheduler_;
  ScenarioRng& rng_;

  // Link keys collected from both hosts during BR/EDR authentication.
  bool awaiting_keys_ = false;
  std::array<bool, 2> key_answered_{};
  std::array<std::optional<LinkKey>, 2> keys_{};
  std::vector<std::string> rejected_;
};

}  // namespace authlab::linklayer
