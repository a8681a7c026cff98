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

#include "authlab/trace/btsnoop.h"

#include <algorithm>

#include "authlab/hci/codec.h"

namespace authlab::trace {
namespace {

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

void PutI64(std::vector<uint8_t>& out, int64_t v) {
  auto u = static_cast<uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(u >> shift));
}

uint32_t GetU32(std::span<const uint8_t> in) {
  return static_cast<uint32_t>(in[0]) << 24 | static_cast<uint32_t>(in[1]) << 16 |
         static_cast<uint32_t>(in[2]) << 8 | static_cast<uint32_t>(in[3]);
}

int64_t GetI64(std::span<const uint8_t> in) {
  uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u = u << 8 | in[i];
  return static_cast<int64_t>(u);
}

}  // namespace

uint32_t FlagsFor(Direction direction, const hci::Packet& packet) {
  uint32_t flags = direction == Direction::kReceived ? 0x1 : 0x0;
  if (!std::holds_alternative<hci::AclData>(packet)) flags |= 0x2;
  return flags;
}

std::vector<uint8_t> SerializeBtsnoop(const BtsnoopFile& file) {
  std::vector<uint8_t> out(kMagic.begin(), kMagic.end());
  PutU32(out, file.version);
  PutU32(out, file.datalink);
  for (const auto& record : file.records) {
    PutU32(out, record.original_length);
    PutU32(out, static_cast<uint32_t>(record.data.size()));
    PutU32(out, record.flags);
    PutU32(out, record.cumulative_drops);
    PutI64(out, record.timestamp);
    out.insert(out.end(), record.data.begin(), record.data.end());
  }
  return out;
}

BtsnoopFile ParseBtsnoop(std::span<const uint8_t> bytes) {
  if (bytes.size() < kFileHeaderSize) {
    if (bytes.size() >= kMagic.size() &&
        !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
      throw TraceError(TraceErrorKind::kBadMagic, "not a btsnoop file");
    }
    throw TraceError(TraceErrorKind::kTruncatedHeader, "file header truncated");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw TraceError(TraceErrorKind::kBadMagic, "not a btsnoop file");
  }
  BtsnoopFile file;
  file.version = GetU32(bytes.subspan(8));
  file.datalink = GetU32(bytes.subspan(12));
  if (file.version != kVersion) {
    throw TraceError(TraceErrorKind::kBadVersion,
                     "unsupported btsnoop version " + std::to_string(file.version));
  }

  size_t pos = kFileHeaderSize;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kRecordHeaderSize) {
      throw TraceError(TraceErrorKind::kTruncatedRecord,
                       "record header truncated at offset " + std::to_string(pos));
    }
    auto header = bytes.subspan(pos, kRecordHeaderSize);
    BtsnoopRecord record;
    record.original_length = GetU32(header);
    uint32_t included = GetU32(header.subspan(4));
    record.flags = GetU32(header.subspan(8));
    record.cumulative_drops = GetU32(header.subspan(12));
    record.timestamp = GetI64(header.subspan(16));
    pos += kRecordHeaderSize;
    if (included > record.original_length) {
      throw TraceError(TraceErrorKind::kBadRecord,
                       "included length exceeds original length");
    }
    if (bytes.size() - pos < included) {
      throw TraceError(TraceErrorKind::kTruncatedRecord,
                       "record payload truncated at offset " + std::to_string(pos));
    }
    auto data = bytes.subspan(pos, included);
    record.data.assign(data.begin(), data.end());
    pos += included;
    file.records.push_back(std::move(record));
  }
  return file;
}

std::vector<uint8_t> WriteTrace(std::span<const TracePacket> packets) {
  BtsnoopFile file;
  SimTime last = 0;
  for (const auto& p : packets) {
    if (p.timestamp < last) {
      throw TraceError(TraceErrorKind::kNonMonotoneTimestamps,
                       "timestamp " + std::to_string(p.timestamp) +
                           " precedes " + std::to_string(last));
    }
    last = p.timestamp;
    BtsnoopRecord record;
    record.data = hci::Encode(p.packet);
    record.original_length = static_cast<uint32_t>(record.data.size());
    record.flags = FlagsFor(p.direction, p.packet);
    record.timestamp = kSimulationEpochMicros + static_cast<int64_t>(p.timestamp);
    file.records.push_back(std::move(record));
  }
  return SerializeBtsnoop(file);
}

std::vector<TracePacket> ReadTrace(std::span<const uint8_t> bytes) {
  BtsnoopFile file = ParseBtsnoop(bytes);
  if (file.datalink != kDatalinkH4) {
    throw TraceError(TraceErrorKind::kBadDatalink,
                     "datalink " + std::to_string(file.datalink) + " is not H4");
  }
  std::vector<TracePacket> packets;
  packets.reserve(file.records.size());
  for (const auto& record : file.records) {
    if (record.data.size() != record.original_length) {
      throw TraceError(TraceErrorKind::kBadRecord, "snapped record cannot be decoded");
    }
    TracePacket p;
    p.timestamp = static_cast<SimTime>(record.timestamp - kSimulationEpochMicros);
    p.direction = (record.flags & 0x1) != 0 ? Direction::kReceived : Direction::kSent;
    p.packet = hci::Decode(record.data);
    packets.push_back(std::move(p));
  }
  return packets;
}

}  // namespace authlab::trace
