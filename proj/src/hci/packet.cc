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

#include "authlab/hci/packet.h"

#include <cstdio>
#include <string>

namespace authlab::hci {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string Hex16(uint16_t v) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%04X", v);
  return buf;
}

std::string Hex8(uint8_t v) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%02X", v);
  return buf;
}

std::string Code(ErrorCode code) { return Hex8(static_cast<uint8_t>(code)); }

}  // namespace

uint16_t OpcodeOf(const Command& command) {
  return std::visit(
      Overloaded{
          [](const LinkKeyRequestReply&) { return opcode::kLinkKeyRequestReply; },
          [](const LinkKeyRequestNegativeReply&) {
            return opcode::kLinkKeyRequestNegativeReply;
          },
          [](const AuthenticationRequested&) {
            return opcode::kAuthenticationRequested;
          },
          [](const Disconnect&) { return opcode::kDisconnect; },
          [](const LeEnableEncryption&) { return opcode::kLeEnableEncryption; },
          [](const RawCommand& raw) { return raw.opcode; },
      },
      command);
}

uint8_t EventCodeOf(const Event& event) {
  return std::visit(
      Overloaded{
          [](const LinkKeyRequest&) { return event_code::kLinkKeyRequest; },
          [](const AuthenticationComplete&) {
            return event_code::kAuthenticationComplete;
          },
          [](const EncryptionChange&) { return event_code::kEncryptionChange; },
          [](const DisconnectionComplete&) {
            return event_code::kDisconnectionComplete;
          },
          [](const LinkKeyNotification&) {
            return event_code::kLinkKeyNotification;
          },
          [](const RawEvent& raw) { return raw.event_code; },
      },
      event);
}

std::string Describe(const Command& command) {
  return std::visit(
      Overloaded{
          [](const LinkKeyRequestReply& c) {
            return "LINK_KEY_REQUEST_REPLY peer=" + c.peer.ToString() +
                   " key=" + c.key.ToHex();
          },
          [](const LinkKeyRequestNegativeReply& c) {
            return "LINK_KEY_REQUEST_NEGATIVE_REPLY peer=" + c.peer.ToString();
          },
          [](const AuthenticationRequested& c) {
            return "AUTHENTICATION_REQUESTED handle=" + Hex16(c.handle);
          },
          [](const Disconnect& c) {
            return "DISCONNECT handle=" + Hex16(c.handle) + " reason=" + Code(c.reason);
          },
          [](const LeEnableEncryption& c) {
            return "LE_ENABLE_ENCRYPTION handle=" + Hex16(c.handle) +
                   " ltk=" + c.ltk.ToHex();
          },
          [](const RawCommand& c) {
            return "RAW_COMMAND opcode=" + Hex16(c.opcode) +
                   " len=" + std::to_string(c.parameters.size());
          },
      },
      command);
}

std::string Describe(const Event& event) {
  return std::visit(
      Overloaded{
          [](const LinkKeyRequest& e) {
            return "LINK_KEY_REQUEST peer=" + e.peer.ToString();
          },
          [](const AuthenticationComplete& e) {
            return "AUTHENTICATION_COMPLETE handle=" + Hex16(e.handle) +
                   " status=" + Code(e.status);
          },
          [](const EncryptionChange& e) {
            return "ENCRYPTION_CHANGE handle=" + Hex16(e.handle) +
                   " status=" + Code(e.status) +
                   " enabled=" + (e.enabled ? "1" : "0");
          },
          [](const DisconnectionComplete& e) {
            return "DISCONNECTION_COMPLETE handle=" + Hex16(e.handle) +
                   " status=" + Code(e.status) + " reason=" + Code(e.reason);
          },
          [](const LinkKeyNotification& e) {
            return "LINK_KEY_NOTIFICATION peer=" + e.peer.ToString() +
                   " key=" + e.key.ToHex() + " type=" +
                   std::string(ToString(e.key_type));
          },
          [](const RawEvent& e) {
            return "RAW_EVENT code=" + Hex8(e.event_code) +
                   " len=" + std::to_string(e.parameters.size());
          },
      },
      event);
}

std::string Describe(const Packet& packet) {
  return std::visit(
      Overloaded{
          [](const Command& c) { return Describe(c); },
          [](const Event& e) { return Describe(e); },
          [](const AclData& a) {
            return "ACL handle_flags=" + Hex16(a.handle_and_flags) +
                   " len=" + std::to_string(a.payload.size());
          },
      },
      packet);
}

}  // namespace authlab::hci
