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

#include "authlab/hci/codec.h"

#include <algorithm>
#include <optional>

namespace authlab::hci {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr size_t kMaxParameterLength = 0xFF;
constexpr size_t kMaxAclLength = 0xFFFF;

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v) {
    out_.push_back(static_cast<uint8_t>(v));
    out_.push_back(static_cast<uint8_t>(v >> 8));
  }
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  void Address(const DeviceAddress& a) {
    auto wire = a.ToWire();
    out_.insert(out_.end(), wire.begin(), wire.end());
  }
  // Keys travel least significant octet first.
  void Key(const LinkKey& k) {
    out_.insert(out_.end(), k.octets().rbegin(), k.octets().rend());
  }
  void Bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

  std::vector<uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> in) : in_(in) {}

  size_t remaining() const { return in_.size() - pos_; }

  uint8_t U8() { return in_[pos_++]; }
  uint16_t U16() {
    uint16_t v = static_cast<uint16_t>(in_[pos_] | in_[pos_ + 1] << 8);
    pos_ += 2;
    return v;
  }
  uint64_t U64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  DeviceAddress Address() {
    auto a = DeviceAddress::FromWire(in_.subspan(pos_).first<DeviceAddress::kSize>());
    pos_ += DeviceAddress::kSize;
    return a;
  }
  LinkKey Key() {
    LinkKey::Octets octets{};
    auto wire = in_.subspan(pos_, LinkKey::kSize);
    std::reverse_copy(wire.begin(), wire.end(), octets.begin());
    pos_ += LinkKey::kSize;
    return LinkKey(octets);
  }

 private:
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

std::vector<uint8_t> CommandParameters(const Command& command) {
  Writer w;
  std::visit(Overloaded{
                 [&](const LinkKeyRequestReply& c) {
                   w.Address(c.peer);
                   w.Key(c.key);
                 },
                 [&](const LinkKeyRequestNegativeReply& c) { w.Address(c.peer); },
                 [&](const AuthenticationRequested& c) { w.U16(c.handle); },
                 [&](const Disconnect& c) {
                   w.U16(c.handle);
                   w.U8(static_cast<uint8_t>(c.reason));
                 },
                 [&](const LeEnableEncryption& c) {
                   w.U16(c.handle);
                   w.U64(c.random_number);
                   w.U16(c.diversifier);
                   w.Key(c.ltk);
                 },
                 [&](const RawCommand& c) { w.Bytes(c.parameters); },
             },
             command);
  return w.Take();
}

std::vector<uint8_t> EventParameters(const Event& event) {
  Writer w;
  std::visit(Overloaded{
                 [&](const LinkKeyRequest& e) { w.Address(e.peer); },
                 [&](const AuthenticationComplete& e) {
                   w.U8(static_cast<uint8_t>(e.status));
                   w.U16(e.handle);
                 },
                 [&](const EncryptionChange& e) {
                   if (e.status != ErrorCode::kSuccess && e.enabled) {
                     throw CodecError(CodecErrorKind::kInvalidParameters,
                                      "encryption change: failed status with enabled=1");
                   }
                   w.U8(static_cast<uint8_t>(e.status));
                   w.U16(e.handle);
                   w.U8(e.enabled ? 0x01 : 0x00);
                 },
                 [&](const DisconnectionComplete& e) {
                   w.U8(static_cast<uint8_t>(e.status));
                   w.U16(e.handle);
                   w.U8(static_cast<uint8_t>(e.reason));
                 },
                 [&](const LinkKeyNotification& e) {
                   w.Address(e.peer);
                   w.Key(e.key);
                   w.U8(static_cast<uint8_t>(e.key_type));
                 },
                 [&](const RawEvent& e) { w.Bytes(e.parameters); },
             },
             event);
  return w.Take();
}

void CheckParameterLength(size_t size) {
  if (size > kMaxParameterLength) {
    throw CodecError(CodecErrorKind::kOversizedParameters,
                     "parameter length " + std::to_string(size) + " exceeds 255");
  }
}

std::optional<Command> TypedCommand(uint16_t op, std::span<const uint8_t> params) {
  Reader r(params);
  switch (op) {
    case opcode::kLinkKeyRequestReply:
      if (params.size() != 22) return std::nullopt;
      {
        LinkKeyRequestReply c;
        c.peer = r.Address();
        c.key = r.Key();
        return c;
      }
    case opcode::kLinkKeyRequestNegativeReply:
      if (params.size() != 6) return std::nullopt;
      return LinkKeyRequestNegativeReply{r.Address()};
    case opcode::kAuthenticationRequested:
      if (params.size() != 2) return std::nullopt;
      return AuthenticationRequested{r.U16()};
    case opcode::kDisconnect: {
      if (params.size() != 3) return std::nullopt;
      uint16_t handle = r.U16();
      auto reason = ErrorCodeFromOctet(r.U8());
      if (!reason) return std::nullopt;
      return Disconnect{handle, *reason};
    }
    case opcode::kLeEnableEncryption: {
      if (params.size() != 28) return std::nullopt;
      LeEnableEncryption c;
      c.handle = r.U16();
      c.random_number = r.U64();
      c.diversifier = r.U16();
      c.ltk = r.Key();
      return c;
    }
    default:
      return std::nullopt;
  }
}

std::optional<Event> TypedEvent(uint8_t code, std::span<const uint8_t> params) {
  Reader r(params);
  switch (code) {
    case event_code::kLinkKeyRequest:
      if (params.size() != 6) return std::nullopt;
      return LinkKeyRequest{r.Address()};
    case event_code::kAuthenticationComplete: {
      if (params.size() != 3) return std::nullopt;
      auto status = ErrorCodeFromOctet(r.U8());
      if (!status) return std::nullopt;
      return AuthenticationComplete{*status, r.U16()};
    }
    case event_code::kEncryptionChange: {
      if (params.size() != 4) return std::nullopt;
      auto status = ErrorCodeFromOctet(r.U8());
      uint16_t handle = r.U16();
      uint8_t enabled = r.U8();
      if (!status || enabled > 1) return std::nullopt;
      if (*status != ErrorCode::kSuccess && enabled == 1) return std::nullopt;
      return EncryptionChange{*status, handle, enabled == 1};
    }
    case event_code::kDisconnectionComplete: {
      if (params.size() != 4) return std::nullopt;
      auto status = ErrorCodeFromOctet(r.U8());
      uint16_t handle = r.U16();
      auto reason = ErrorCodeFromOctet(r.U8());
      if (!status || !reason) return std::nullopt;
      return DisconnectionComplete{*status, handle, *reason};
    }
    case event_code::kLinkKeyNotification: {
      if (params.size() != 23) return std::nullopt;
      LinkKeyNotification e;
      e.peer = r.Address();
      e.key = r.Key();
      auto type = KeyTypeFromOctet(r.U8());
      if (!type) return std::nullopt;
      e.key_type = *type;
      return e;
    }
    default:
      return std::nullopt;
  }
}

[[noreturn]] void Truncated(const char* what) {
  throw CodecError(CodecErrorKind::kTruncated, what);
}

}  // namespace

std::vector<uint8_t> Encode(const Command& command) {
  auto params = CommandParameters(command);
  CheckParameterLength(params.size());
  Writer w;
  w.U8(kCommandIndicator);
  w.U16(OpcodeOf(command));
  w.U8(static_cast<uint8_t>(params.size()));
  w.Bytes(params);
  return w.Take();
}

std::vector<uint8_t> Encode(const Event& event) {
  auto params = EventParameters(event);
  CheckParameterLength(params.size());
  Writer w;
  w.U8(kEventIndicator);
  w.U8(EventCodeOf(event));
  w.U8(static_cast<uint8_t>(params.size()));
  w.Bytes(params);
  return w.Take();
}

std::vector<uint8_t> Encode(const AclData& acl) {
  if (acl.payload.size() > kMaxAclLength) {
    throw CodecError(CodecErrorKind::kOversizedParameters,
                     "ACL payload exceeds 65535 octets");
  }
  Writer w;
  w.U8(kAclIndicator);
  w.U16(acl.handle_and_flags);
  w.U16(static_cast<uint16_t>(acl.payload.size()));
  w.Bytes(acl.payload);
  return w.Take();
}

std::vector<uint8_t> Encode(const Packet& packet) {
  return std::visit([](const auto& p) { return Encode(p); }, packet);
}

DecodeResult DecodePrefix(std::span<const uint8_t> bytes) {
  if (bytes.empty()) Truncated("empty packet");
  switch (bytes[0]) {
    case kCommandIndicator: {
      if (bytes.size() < 4) Truncated("command header");
      uint16_t op = static_cast<uint16_t>(bytes[1] | bytes[2] << 8);
      size_t length = bytes[3];
      if (bytes.size() - 4 < length) Truncated("command parameters");
      auto params = bytes.subspan(4, length);
      Command command = RawCommand{op, {params.begin(), params.end()}};
      if (auto typed = TypedCommand(op, params)) command = *typed;
      return {Packet{std::move(command)}, 4 + length};
    }
    case kEventIndicator: {
      if (bytes.size() < 3) Truncated("event header");
      uint8_t code = bytes[1];
      size_t length = bytes[2];
      if (bytes.size() - 3 < length) Truncated("event parameters");
      auto params = bytes.subspan(3, length);
      Event event = RawEvent{code, {params.begin(), params.end()}};
      if (auto typed = TypedEvent(code, params)) event = *typed;
      return {Packet{std::move(event)}, 3 + length};
    }
    case kAclIndicator: {
      if (bytes.size() < 5) Truncated("ACL header");
      uint16_t handle = static_cast<uint16_t>(bytes[1] | bytes[2] << 8);
      size_t length = static_cast<size_t>(bytes[3] | bytes[4] << 8);
      if (bytes.size() - 5 < length) Truncated("ACL payload");
      auto payload = bytes.subspan(5, length);
      return {Packet{AclData{handle, {payload.begin(), payload.end()}}}, 5 + length};
    }
    default:
      throw CodecError(CodecErrorKind::kBadIndicator,
                       "unknown packet indicator " + std::to_string(bytes[0]));
  }
}

Packet Decode(std::span<const uint8_t> bytes) {
  auto result = DecodePrefix(bytes);
  if (result.consumed != bytes.size()) {
    throw CodecError(CodecErrorKind::kTrailingBytes,
                     std::to_string(bytes.size() - result.consumed) +
                         " octets after packet end");
  }
  return std::move(result.packet);
}

}  // namespace authlab::hci
