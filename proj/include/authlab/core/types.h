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
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace authlab {

enum class Transport : uint8_t { kBtClassic, kBle };

// Link key classification; the numeric values are the HCI Key_Type octets
// (P-192 variants) used on the wire by Link_Key_Notification.
enum class KeyType : uint8_t {
  kCombination = 0x00,
  kUnauthenticated = 0x04,
  kAuthenticated = 0x05,
};

// HCI status / reason codes. Values are part of the wire format.
enum class ErrorCode : uint8_t {
  kSuccess = 0x00,
  kAuthenticationFailure = 0x05,
  kPinOrKeyMissing = 0x06,
  kRemoteUserTerminated = 0x13,
};

std::string_view ToString(Transport transport);
std::string_view ToString(KeyType type);
std::string_view ToString(ErrorCode code);

std::optional<Transport> TransportFromString(std::string_view text);
std::optional<KeyType> KeyTypeFromString(std::string_view text);
std::optional<KeyType> KeyTypeFromOctet(uint8_t octet);
std::optional<ErrorCode> ErrorCodeFromOctet(uint8_t octet);

// 128-bit opaque key. Octet 0 is the most significant in text form.
class LinkKey {
 public:
  static constexpr size_t kSize = 16;
  using Octets = std::array<uint8_t, kSize>;

  constexpr LinkKey() = default;
  constexpr explicit LinkKey(const Octets& octets) : octets_(octets) {}

  // Accepts exactly 32 hex digits, optionally prefixed by "0x".
  static std::optional<LinkKey> FromHex(std::string_view text);
  std::string ToHex() const;

  const Octets& octets() const { return octets_; }

  friend auto operator<=>(const LinkKey&, const LinkKey&) = default;

 private:
  Octets octets_{};
};

// Thrown for malformed domain input (bad key text, bad address text).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace authlab
