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
#include <span>
#include <string>
#include <string_view>

namespace authlab {

// Bluetooth device address. Octets are kept in display order (octet 0 is
// the leftmost pair in "AA:BB:CC:DD:EE:FF"); HCI carries them reversed.
class DeviceAddress {
 public:
  static constexpr size_t kSize = 6;
  using Octets = std::array<uint8_t, kSize>;

  constexpr DeviceAddress() = default;
  constexpr explicit DeviceAddress(const Octets& octets) : octets_(octets) {}

  static std::optional<DeviceAddress> FromString(std::string_view text);
  std::string ToString() const;

  // Little-endian wire order as used in HCI parameters.
  static DeviceAddress FromWire(std::span<const uint8_t, kSize> wire);
  Octets ToWire() const;

  const Octets& octets() const { return octets_; }

  friend auto operator<=>(const DeviceAddress&, const DeviceAddress&) = default;

 private:
  Octets octets_{};
};

}  // namespace authlab
