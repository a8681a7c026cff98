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
#include <string>
#include <variant>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/types.h"

namespace authlab::hci {

// H4 packet indicators.
inline constexpr uint8_t kCommandIndicator = 0x01;
inline constexpr uint8_t kAclIndicator = 0x02;
inline constexpr uint8_t kEventIndicator = 0x04;

constexpr uint16_t MakeOpcode(uint16_t ogf, uint16_t ocf) {
  return static_cast<uint16_t>(ogf << 10 | (ocf & 0x03FF));
}
constexpr uint16_t OpcodeGroup(uint16_t opcode) { return opcode >> 10; }
constexpr uint16_t OpcodeCommand(uint16_t opcode) { return opcode & 0x03FF; }

namespace opcode {
// Link Control (OGF 0x01)
inline constexpr uint16_t kDisconnect = MakeOpcode(0x01, 0x0006);
inline constexpr uint16_t kLinkKeyRequestReply = MakeOpcode(0x01, 0x000B);
inline constexpr uint16_t kLinkKeyRequestNegativeReply = MakeOpcode(0x01, 0x000C);
inline constexpr uint16_t kAuthenticationRequested = MakeOpcode(0x01, 0x0011);
// LE Controller (OGF 0x08)
inline constexpr uint16_t kLeEnableEncryption = MakeOpcode(0x08, 0x0019);
}  // namespace opcode

namespace event_code {
inline constexpr uint8_t kDisconnectionComplete = 0x05;
inline constexpr uint8_t kAuthenticationComplete = 0x06;
inline constexpr uint8_t kEncryptionChange = 0x08;
inline constexpr uint8_t kLinkKeyRequest = 0x17;
inline constexpr uint8_t kLinkKeyNotification = 0x18;
}  // namespace event_code

// Commands (host -> controller).

struct LinkKeyRequestReply {
  DeviceAddress peer;
  LinkKey key;
  friend bool operator==(const LinkKeyRequestReply&, const LinkKeyRequestReply&) = default;
};

struct LinkKeyRequestNegativeReply {
  DeviceAddress peer;
  friend bool operator==(const LinkKeyRequestNegativeReply&,
                         const LinkKeyRequestNegativeReply&) = default;
};

struct AuthenticationRequested {
  uint16_t handle = 0;
  friend bool operator==(const AuthenticationRequested&,
                         const AuthenticationRequested&) = default;
};

struct Disconnect {
  uint16_t handle = 0;
  ErrorCode reason = ErrorCode::kAuthenticationFailure;
  friend bool operator==(const Disconnect&, const Disconnect&) = default;
};

struct LeEnableEncryption {
  uint16_t handle = 0;
  uint64_t random_number = 0;
  uint16_t diversifier = 0;
  LinkKey ltk;
  friend bool operator==(const LeEnableEncryption&, const LeEnableEncryption&) = default;
};

struct RawCommand {
  uint16_t opcode = 0;
  std::vector<uint8_t> parameters;
  friend bool operator==(const RawCommand&, const RawCommand&) = default;
};

using Command = std::variant<LinkKeyRequestReply, LinkKeyRequestNegativeReply,
                             AuthenticationRequested, Disconnect,
                             LeEnableEncryption, RawCommand>;

// Events (controller -> host).

struct LinkKeyRequest {
  DeviceAddress peer;
  friend bool operator==(const LinkKeyRequest&, const LinkKeyRequest&) = default;
};

struct AuthenticationComplete {
  ErrorCode status = ErrorCode::kSuccess;
  uint16_t handle = 0;
  friend bool operator==(const AuthenticationComplete&,
                         const AuthenticationComplete&) = default;
};

// status != kSuccess implies enabled == false; Encode rejects violations.
struct EncryptionChange {
  ErrorCode status = ErrorCode::kSuccess;
  uint16_t handle = 0;
  bool enabled = false;
  friend bool operator==(const EncryptionChange&, const EncryptionChange&) = default;
};

struct DisconnectionComplete {
  ErrorCode status = ErrorCode::kSuccess;
  uint16_t handle = 0;
  ErrorCode reason = ErrorCode::kSuccess;
  friend bool operator==(const DisconnectionComplete&,
                         const DisconnectionComplete&) = default;
};

struct LinkKeyNotification {
  DeviceAddress peer;
  LinkKey key;
  KeyType key_type = KeyType::kCombination;
  friend bool operator==(const LinkKeyNotification&, const LinkKeyNotification&) = default;
};

struct RawEvent {
  uint8_t event_code = 0;
  std::vector<uint8_t> parameters;
  friend bool operator==(const RawEvent&, const RawEvent&) = default;
};

using Event = std::variant<LinkKeyRequest, AuthenticationComplete,
                           EncryptionChange, DisconnectionComplete,
                           LinkKeyNotification, RawEvent>;

// ACL data is framed only; the payload stays opaque.
struct AclData {
  uint16_t handle_and_flags = 0;
  std::vector<uint8_t> payload;
  friend bool operator==(const AclData&, const AclData&) = default;
};

using Packet = std::variant<Command, Event, AclData>;

uint16_t OpcodeOf(const Command& command);
uint8_t EventCodeOf(const Event& event);

// Human-readable one-line summary, e.g. "DISCONNECT handle=0x0001 reason=0x05".
std::string Describe(const Command& command);
std::string Describe(const Event& event);
std::string Describe(const Packet& packet);

}  // namespace authlab::hci
