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

#include <random>
#include <string>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/types.h"
#include "authlab/hci/packet.h"
#include "authlab/scenario/config.h"

namespace authlab::testing {

inline DeviceAddress Addr(const std::string& text) { return *DeviceAddress::FromString(text); }
inline LinkKey Key(const std::string& hex) { return *LinkKey::FromHex(hex); }

inline std::string ScenarioPath(const std::string& relative) {
  return std::string(AUTHLAB_SCENARIO_DIR) + "/" + relative;
}

inline scenario::ScenarioConfig Shipped(const std::string& relative) {
  return scenario::LoadConfig(ScenarioPath(relative));
}

// Generators for typed packets that survive an encode/decode cycle.
class PacketGen {
 public:
  explicit PacketGen(uint64_t seed) : rng_(seed) {}

  uint64_t U64() { return rng_(); }
  uint16_t U16() { return static_cast<uint16_t>(rng_()); }
  uint8_t U8() { return static_cast<uint8_t>(rng_()); }
  size_t Below(size_t n) { return static_cast<size_t>(rng_() % n); }

  DeviceAddress Address() {
    DeviceAddress::Octets o{};
    for (auto& b : o) b = U8();
    return DeviceAddress(o);
  }
  LinkKey AnyKey() {
    LinkKey::Octets o{};
    for (auto& b : o) b = U8();
    return LinkKey(o);
  }
  uint16_t Handle() { return U16() & 0x0EFF; }
  ErrorCode Status() {
    static constexpr ErrorCode kCodes[] = {ErrorCode::kSuccess, ErrorCode::kAuthenticationFailure,
                                           ErrorCode::kPinOrKeyMissing,
                                           ErrorCode::kRemoteUserTerminated};
    return kCodes[Below(4)];
  }
  KeyType Type() {
    static constexpr KeyType kTypes[] = {KeyType::kCombination, KeyType::kUnauthenticated,
                                         KeyType::kAuthenticated};
    return kTypes[Below(3)];
  }
  std::vector<uint8_t> Bytes(size_t max) {
    std::vector<uint8_t> v(Below(max + 1));
    for (auto& b : v) b = U8();
    return v;
  }

  hci::Command Command() {
    switch (Below(6)) {
      case 0:
        return hci::LinkKeyRequestReply{Address(), AnyKey()};
      case 1:
        return hci::LinkKeyRequestNegativeReply{Address()};
      case 2:
        return hci::AuthenticationRequested{Handle()};
      case 3:
        return hci::Disconnect{Handle(), Status()};
      case 4:
        return hci::LeEnableEncryption{Handle(), U64(), U16(), AnyKey()};
      default: {
        // Vendor-specific group, never decoded as a typed command.
        uint16_t opcode = static_cast<uint16_t>(0xFC00 | (U16() & 0x03FF));
        return hci::RawCommand{opcode, Bytes(255)};
      }
    }
  }

  hci::Event Event() {
    switch (Below(6)) {
      case 0:
        return hci::LinkKeyRequest{Address()};
      case 1:
        return hci::AuthenticationComplete{Status(), Handle()};
      case 2: {
        ErrorCode status = Status();
        bool enabled = status == ErrorCode::kSuccess && Below(2) == 1;
        return hci::EncryptionChange{status, Handle(), enabled};
      }
      case 3:
        return hci::DisconnectionComplete{Status(), Handle(), Status()};
      case 4:
        return hci::LinkKeyNotification{Address(), AnyKey(), Type()};
      default: {
        static constexpr uint8_t kUnmodelled[] = {0x03, 0x0E, 0x0F, 0x13, 0x3E, 0xFF};
        return hci::RawEvent{kUnmodelled[Below(6)], Bytes(255)};
      }
    }
  }

  hci::AclData Acl() { return hci::AclData{Handle(), Bytes(300)}; }

  hci::Packet Packet() {
    switch (Below(5)) {
      case 0:
      case 1:
        return Command();
      case 2:
      case 3:
        return Event();
      default:
        return Acl();
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace authlab::testing
