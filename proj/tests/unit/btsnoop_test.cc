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

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>

#include "authlab/hci/codec.h"
#include "authlab/scenario/simulation.h"
#include "authlab/trace/btsnoop.h"
#include "test_util.h"

namespace authlab::trace {
namespace {

using Bytes = std::vector<uint8_t>;

void PutU32(Bytes& b, uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) b.push_back(static_cast<uint8_t>(v >> s));
}

TraceErrorKind ReadErrorOf(const Bytes& bytes) {
  try {
    ReadTrace(bytes);
  } catch (const TraceError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "read did not fail";
  return TraceErrorKind::kBadRecord;
}

Bytes ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

TEST(Btsnoop, EmptyTraceIsHeaderOnly) {
  Bytes expected = {'b', 't', 's', 'n', 'o', 'o', 'p', 0, 0, 0, 0, 1, 0, 0, 0x03, 0xEA};
  EXPECT_EQ(WriteTrace({}), expected);
  EXPECT_TRUE(ReadTrace(expected).empty());
}

TEST(Btsnoop, EpochConstants) {
  // The conventional btsnoop origin sits a round 719540 days before 1970.
  EXPECT_EQ(kUnixEpochMicros, 719540LL * 86400LL * 1000000LL);
  EXPECT_EQ(kSimulationEpochMicros, 63782812800000000LL);
}

TEST(Btsnoop, SentDisconnectRecordLayout) {
  std::vector<TracePacket> packets = {
      {0, Direction::kSent, hci::Command(hci::Disconnect{1, ErrorCode::kAuthenticationFailure})}};
  Bytes expected = {'b', 't', 's', 'n', 'o', 'o', 'p', 0};
  PutU32(expected, 1);
  PutU32(expected, 1002);
  PutU32(expected, 7);  // original length
  PutU32(expected, 7);  // included length
  PutU32(expected, 2);  // sent, command
  PutU32(expected, 0);  // drops
  for (uint8_t b : {0x00, 0xE2, 0x9A, 0x21, 0x5B, 0xB8, 0x20, 0x00}) expected.push_back(b);
  for (uint8_t b : {0x01, 0x06, 0x04, 0x03, 0x01, 0x00, 0x05}) expected.push_back(b);
  EXPECT_EQ(WriteTrace(packets), expected);
  EXPECT_EQ(ReadTrace(expected), packets);
}

TEST(Btsnoop, DirectionAndTypeFlags) {
  hci::Packet cmd = hci::Command(hci::AuthenticationRequested{1});
  hci::Packet evt = hci::Event(hci::LinkKeyRequest{});
  hci::Packet acl = hci::AclData{1, {}};
  EXPECT_EQ(FlagsFor(Direction::kSent, cmd), 2u);
  EXPECT_EQ(FlagsFor(Direction::kReceived, evt), 3u);
  EXPECT_EQ(FlagsFor(Direction::kSent, acl), 0u);
  EXPECT_EQ(FlagsFor(Direction::kReceived, acl), 1u);
}

TEST(Btsnoop, NonMonotoneTimestampsRejected) {
  std::vector<TracePacket> packets = {
      {10, Direction::kSent, hci::Command(hci::AuthenticationRequested{1})},
      {9, Direction::kReceived, hci::Event(hci::LinkKeyRequest{})}};
  try {
    WriteTrace(packets);
    FAIL() << "expected TraceError";
  } catch (const TraceError& e) {
    EXPECT_EQ(e.kind(), TraceErrorKind::kNonMonotoneTimestamps);
  }
  packets[1].timestamp = 10;
  EXPECT_NO_THROW(WriteTrace(packets));
}

TEST(Btsnoop, HeaderErrors) {
  Bytes good = WriteTrace(
      std::vector<TracePacket>{{0, Direction::kSent, hci::Command(hci::AuthenticationRequested{1})}});
  Bytes bad_magic = good;
  bad_magic[0] = 'B';
  EXPECT_EQ(ReadErrorOf(bad_magic), TraceErrorKind::kBadMagic);
  Bytes bad_version = good;
  bad_version[11] = 2;
  EXPECT_EQ(ReadErrorOf(bad_version), TraceErrorKind::kBadVersion);
  Bytes bad_datalink = good;
  bad_datalink[15] = 0xE9;
  EXPECT_EQ(ReadErrorOf(bad_datalink), TraceErrorKind::kBadDatalink);
  EXPECT_EQ(ReadErrorOf(Bytes(good.begin(), good.begin() + 10)), TraceErrorKind::kTruncatedHeader);
}

TEST(Btsnoop, ClippedFileIsTruncatedRecord) {
  Bytes good = WriteTrace(
      std::vector<TracePacket>{{0, Direction::kSent, hci::Command(hci::AuthenticationRequested{1})}});
  for (size_t cut = kFileHeaderSize + 1; cut < good.size(); ++cut) {
    EXPECT_EQ(ReadErrorOf(Bytes(good.begin(), good.begin() + static_cast<long>(cut))),
              TraceErrorKind::kTruncatedRecord)
        << "cut at " << cut;
  }
}

TEST(Btsnoop, RawContainerKeepsSnappedRecords) {
  BtsnoopFile file;
  file.records.push_back({10, 3, 4, 123, {0x04, 0xFF}});
  Bytes bytes = SerializeBtsnoop(file);
  EXPECT_EQ(ParseBtsnoop(bytes), file);
  // The typed reader cannot decode a snapped packet.
  EXPECT_EQ(ReadErrorOf(bytes), TraceErrorKind::kBadRecord);
}

TEST(BtsnoopProperty, RandomPacketListsRoundTrip) {
  testing::PacketGen gen(2024);
  for (int n = 0; n < 200; ++n) {
    std::vector<TracePacket> packets;
    SimTime t = gen.U64() % 1000000;
    size_t count = gen.Below(40);
    for (size_t i = 0; i < count; ++i) {
      t += gen.Below(3) * Scheduler::kSlotMicros;
      packets.push_back({t, gen.Below(2) ? Direction::kSent : Direction::kReceived, gen.Packet()});
    }
    Bytes bytes = WriteTrace(packets);
    ASSERT_EQ(ReadTrace(bytes), packets);
    ASSERT_EQ(WriteTrace(ReadTrace(bytes)), bytes);
    ASSERT_EQ(SerializeBtsnoop(ParseBtsnoop(bytes)), bytes);
  }
}

TEST(BtsnoopGolden, ShippedTraceDecodesToFrozenListing) {
  Bytes golden = ReadFile(std::string(AUTHLAB_TEST_DATA_DIR) + "/bonded-mismatch-reference.btsnoop");
  ASSERT_FALSE(golden.empty());
  std::ifstream listing(std::string(AUTHLAB_TEST_DATA_DIR) + "/bonded-mismatch-reference.txt");
  std::vector<std::string> expected;
  for (std::string line; std::getline(listing, line);) expected.push_back(line);

  for (int run = 0; run < 3; ++run) {
    auto packets = ReadTrace(golden);
    std::vector<std::string> actual;
    for (const auto& p : packets) {
      actual.push_back(std::to_string(p.timestamp) + " " +
                       (p.direction == Direction::kSent ? "> " : "< ") + hci::Describe(p.packet));
    }
    EXPECT_EQ(actual, expected);
  }
}

TEST(BtsnoopGolden, ScenarioRegeneratesGoldenBytes) {
  auto config = testing::Shipped("bonded-mismatch/reference.cfg");
  Bytes golden = ReadFile(std::string(AUTHLAB_TEST_DATA_DIR) + "/bonded-mismatch-reference.btsnoop");
  auto result = scenario::Simulate(config);
  EXPECT_EQ(WriteTrace(result.dut_trace()), golden);
}

}  // namespace
}  // namespace authlab::trace
