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

#include "authlab/core/address.h"

#include <algorithm>
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

std::optional<DeviceAddress> DeviceAddress::FromString(std::string_view text) {
  // "XX:XX:XX:XX:XX:XX"
  if (text.size() != 17) return std::nullopt;
  Octets octets{};
  for (size_t i = 0; i < kSize; ++i) {
    size_t pos = i * 3;
    int hi = HexValue(text[pos]);
    int lo = HexValue(text[pos + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    if (i + 1 < kSize && text[pos + 2] != ':') return std::nullopt;
    octets[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return DeviceAddress(octets);
}

std::string DeviceAddress::ToString() const {
  char buf[18];
  std::snprintf(buf, sizeof(buf), "%02X:%02X:%02X:%02X:%02X:%02X", octets_[0],
                octets_[1], octets_[2], octets_[3], octets_[4], octets_[5]);
  return buf;
}

DeviceAddress DeviceAddress::FromWire(std::span<const uint8_t, kSize> wire) {
  Octets octets{};
  std::reverse_copy(wire.begin(), wire.end(), octets.begin());
  return DeviceAddress(octets);
}

DeviceAddress::Octets DeviceAddress::ToWire() const {
  Octets wire{};
  std::reverse_copy(octets_.begin(), octets_.end(), wire.begin());
  return wire;
}

}  // namespace authlab
