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
#include <stdexcept>

#include "authlab/core/address.h"
#include "authlab/core/key_store.h"
#include "authlab/core/rng.h"

namespace authlab::attack {

// Attacker holding one key per victim: K_AM with the first victim and K_MB
// with the second. Its key store is indexed by the victim's address.
class MitmNode {
 public:
  explicit MitmNode(DeviceAddress address) : address_(address) {}

  const DeviceAddress& address() const { return address_; }
  KeyStore& store() { return store_; }
  const KeyStore& store() const { return store_; }

  bool present() const { return present_; }
  void set_present(bool present) { present_ = present; }

  // Records both halves of a pairing made through the attacker. Throws
  // std::invalid_argument if the two keys are equal.
  void Intercept(const LinkKeyRecord& with_a, const LinkKeyRecord& with_b);

  // Key held for `victim`; used for authentication on that segment.
  std::optional<LinkKey> KeyFor(const DeviceAddress& victim, Transport transport) const;

  // Whether the attacker holds keys for both ends of a relay.
  bool HoldsPairing(const DeviceAddress& a, const DeviceAddress& b, Transport transport) const;

 private:
  DeviceAddress address_;
  KeyStore store_;
  bool present_ = false;
};

enum class Route : uint8_t {
  kDirect,       // attacker absent: victims talk to each other
  kRelay,        // attacker present with keys for both victims
  kImpersonate,  // attacker present but without the victims' keys
};

std::string_view ToString(Route route);

struct ConnectionAttempt {
  DeviceAddress initiator;
  DeviceAddress responder;
  Transport transport = Transport::kBtClassic;
};

// Decides how a connection attempt between two victims is carried.
Route PlanRoute(const MitmNode* node, const ConnectionAttempt& attempt);

}  // namespace authlab::attack
