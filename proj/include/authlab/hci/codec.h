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
#include <span>
#include <stdexcept>
#include <vector>

#include "authlab/hci/packet.h"

namespace authlab::hci {

enum class CodecErrorKind {
  kOversizedParameters,
  kInvalidParameters,
  kTruncated,
  kBadIndicator,
  kTrailingBytes,
};

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  CodecErrorKind kind() const { return kind_; }

 private:
  CodecErrorKind kind_;
};

// H4 framing: indicator octet, header, parameters.
std::vector<uint8_t> Encode(const Command& command);
std::vector<uint8_t> Encode(const Event& event);
std::vector<uint8_t> Encode(const AclData& acl);
std::vector<uint8_t> Encode(const Packet& packet);

// Decodes exactly one H4 packet spanning all of `bytes`. Unknown opcodes and
// event codes, and known codes whose parameters do not fit the typed form,
// come back as RawCommand / RawEvent with the parameter bytes preserved.
Packet Decode(std::span<const uint8_t> bytes);

// Decodes the first packet of `bytes`, reporting how many octets it used.
struct DecodeResult {
  Packet packet;
  size_t consumed = 0;
};
DecodeResult DecodePrefix(std::span<const uint8_t> bytes);

}  // namespace authlab::hci
