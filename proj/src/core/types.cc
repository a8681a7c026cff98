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

#include "authlab/core/types.h"

#include <cstdio>

namespace authlab {
namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string_view ToString(Transport transport) {
  switch (transport) {
    case Transport::kBtClassic:
      return "BT";
    case Transport::kBle:
      return "BLE";
  }
  return "?";
}

std::string_view ToString(KeyType type) {
  switch (type) {
    case KeyType::kCombination:
      return "COMBINATION";
    case KeyType::kUnauthenticated:
      return "UNAUTHENTICATED";
    case KeyType::kAuthenticated:
      return "AUTHENTICATED";
  }
  return "?";
}

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSuccess:
      return "SUCCESS";
    case ErrorCode::kAuthenticationFailure:
      return "AUTHENTICATION_FAILURE";
    case ErrorCode::kPinOrKeyMissing:
      return "PIN_OR_KEY_MISSING";
    case ErrorCode::kRemoteUserTerminated:
      return "REMOTE_USER_TERMINATED";
  }
  return "?";
}

std::optional<Transport> TransportFromString(std::string_view text) {
  if (text == "BT") return Transport::kBtClassic;
  if (text == "BLE") return Transport::kBle;
  return std::nullopt;
}

std::optional<KeyType> KeyTypeFromString(std::string_view text) {
  for (KeyType t : {KeyType::kCombination, KeyType::kUnauthenticated,
                    KeyType::kAuthenticated}) {
    if (ToString(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<KeyType> KeyTypeFromOctet(uint8_t octet) {
  switch (octet) {
    case 0x00:
      return KeyType::kCombination;
    case 0x04:
      return KeyType::kUnauthenticated;
    case 0x05:
      return KeyType::kAuthenticated;
    default:
      return std::nullopt;
  }
}

std::optional<ErrorCode> ErrorCodeFromOctet(uint8_t octet) {
  switch (octet) {
    case 0x00:
      return ErrorCode::kSuccess;
    case 0x05:
      return ErrorCode::kAuthenticationFailure;
    case 0x06:
      return ErrorCode::kPinOrKeyMissing;
    case 0x13:
      return ErrorCode::kRemoteUserTerminated;
    default:
      return std::nullopt;
  }
}

std::optional<LinkKey> LinkKey::FromHex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.size() != 2 * kSize) return std::nullopt;
  Octets octets{};
  for (size_t i = 0; i < kSize; ++i) {
    int hi = HexValue(text[2 * i]);
    int lo = HexValue(text[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    octets[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return LinkKey(octets);
}

std::string LinkKey::ToHex() const {
  std::string out;
  out.reserve(2 * kSize);
  char buf[3];
  for (uint8_t b : octets_) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

}  // namespace authlab
