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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "authlab/core/sim_clock.h"
#include "authlab/hci/packet.h"

namespace authlab::trace {

// btsnoop file layout (all fields big-endian):
//   header:  "btsnoop\0" | version u32 = 1 | datalink u32 = 1002 (H4)
//   record:  original_length u32 | included_length u32 | flags u32 |
//            cumulative_drops u32 | timestamp i64 | packet bytes
// flags bit 0: 0 = sent (host -> controller), 1 = received.
// flags bit 1: 1 = command or event, 0 = data.
// Timestamps count microseconds since 0000-01-01 00:00:00 UTC.

inline constexpr std::array<uint8_t, 8> kMagic = {'b', 't', 's', 'n', 'o', 'o', 'p', '\0'};
inline constexpr uint32_t kVersion = 1;
inline constexpr uint32_t kDatalinkH4 = 1002;
inline constexpr size_t kFileHeaderSize = 16;
inline constexpr size_t kRecordHeaderSize = 24;

// Microseconds between 0000-01-01 and the Unix epoch.
inline constexpr int64_t kUnixEpochMicros = 0x00dcddb30f2f8000LL;
// Simulation time zero maps to 2021-03-01 00:00:00 UTC.
inline constexpr int64_t kSimulationEpochMicros =
    kUnixEpochMicros + 1614556800LL * 1000000LL;

enum class Direction : uint8_t { kSent, kReceived };

struct TracePacket {
  SimTime timestamp = 0;
  Direction direction = Direction::kSent;
  hci::Packet packet;
  friend bool operator==(const TracePacket&, const TracePacket&) = default;
};

struct BtsnoopRecord {
  uint32_t original_length = 0;
  uint32_t flags = 0;
  uint32_t cumulative_drops = 0;
  int64_t timestamp = 0;
  std::vector<uint8_t> data;  // included_length == data.size()
  friend bool operator==(const BtsnoopRecord&, const BtsnoopRecord&) = default;
};

struct BtsnoopFile {
  uint32_t version = kVersion;
  uint32_t datalink = kDatalinkH4;
  std::vector<BtsnoopRecord> records;
  friend bool operator==(const BtsnoopFile&, const BtsnoopFile&) = default;
};

enum class TraceErrorKind {
  kNonMonotoneTimestamps,
  kBadMagic,
  kBadVersion,
  kBadDatalink,
  kTruncatedHeader,
  kTruncatedRecord,
  kBadRecord,
};

class TraceError : public std::runtime_error {
 public:
  TraceError(TraceErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  TraceErrorKind kind() const { return kind_; }

 private:
  TraceErrorKind kind_;
};

// Raw container layer.
std::vector<uint8_t> SerializeBtsnoop(const BtsnoopFile& file);
BtsnoopFile ParseBtsnoop(std::span<const uint8_t> bytes);

// Typed layer: H4 packets with direction and simulation timestamps.
std::vector<uint8_t> WriteTrace(std::span<const TracePacket> packets);
std::vector<TracePacket> ReadTrace(std::span<const uint8_t> bytes);

uint32_t FlagsFor(Direction direction, const hci::Packet& packet);

}  // namespace authlab::trace
