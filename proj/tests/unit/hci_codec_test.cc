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

#include "authlab/hci/codec.h"
#include "test_util.h"

namespace authlab::hci {
namespace {

using testing::Addr;
using testing::Key;
using Bytes = std::vector<uint8_t>;

CodecErrorKind DecodeErrorOf(const Bytes& bytes) {
  try {
    Decode(bytes);
  } catch (const CodecError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode did not fail";
  return CodecErrorKind::kInvalidParameters;
}

TEST(HciCodec, DisconnectEncoding) {
  Command c = Disconnect{0x0001, ErrorCode::kAuthenticationFailure};
  EXPECT_EQ(Encode(c), (Bytes{0x01, 0x06, 0x04, 0x03, 0x01, 0x00, 0x05}));
  EXPECT_EQ(Decode(Bytes{0x01, 0x06, 0x04, 0x03, 0x01, 0x00, 0x05}), Packet(c));
}

TEST(HciCodec, ClippedDisconnectIsTruncated) {
  EXPECT_EQ(DecodeErrorOf({0x01, 0x06, 0x04, 0x05, 0x01}), CodecErrorKind::kTruncated);
  EXPECT_EQ(DecodeErrorOf({0x01, 0x06, 0x04, 0x03, 0x01, 0x00}), CodecErrorKind::kTruncated);
  EXPECT_EQ(DecodeErrorOf({0x01, 0x06}), CodecErrorKind::kTruncated);
}

TEST(HciCodec, UnknownEventIsRaw) {
  Packet p = Decode(Bytes{0x04, 0xFF, 0x00});
  EXPECT_EQ(p, Packet(Event(RawEvent{0xFF, {}})));
  EXPECT_EQ(Encode(p), (Bytes{0x04, 0xFF, 0x00}));
}

TEST(HciCodec, LinkKeyRequestReplyReversesAddressAndKey) {
  Command c = LinkKeyRequestReply{Addr("00:1A:7D:DA:71:13"),
                                  Key("000102030405060708090a0b0c0d0e0f")};
  Bytes expected = {0x01, 0x0B, 0x04, 0x16, 0x13, 0x71, 0xDA, 0x7D, 0x1A, 0x00};
  for (int i = 15; i >= 0; --i) expected.push_back(static_cast<uint8_t>(i));
  EXPECT_EQ(Encode(c), expected);
  EXPECT_EQ(Decode(expected), Packet(c));
}

TEST(HciCodec, LeEnableEncryptionLayout) {
  Command c = LeEnableEncryption{0x0040, 0x0102030405060708ULL, 0xA1B2,
                                 Key("000102030405060708090a0b0c0d0e0f")};
  Bytes expected = {0x01, 0x19, 0x20, 0x1C, 0x40, 0x00,
                    0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01,
                    0xB2, 0xA1};
  for (int i = 15; i >= 0; --i) expected.push_back(static_cast<uint8_t>(i));
  EXPECT_EQ(Encode(c), expected);
  EXPECT_EQ(Decode(expected), Packet(c));
}

TEST(HciCodec, EventLayouts) {
  EXPECT_EQ(Encode(Event(AuthenticationComplete{ErrorCode::kAuthenticationFailure, 0x0002})),
            (Bytes{0x04, 0x06, 0x03, 0x05, 0x02, 0x00}));
  EXPECT_EQ(Encode(Event(EncryptionChange{ErrorCode::kSuccess, 0x0002, true})),
            (Bytes{0x04, 0x08, 0x04, 0x00, 0x02, 0x00, 0x01}));
  EXPECT_EQ(Encode(Event(DisconnectionComplete{ErrorCode::kSuccess, 0x0002,
                                               ErrorCode::kRemoteUserTerminated})),
            (Bytes{0x04, 0x05, 0x04, 0x00, 0x02, 0x00, 0x13}));
  EXPECT_EQ(Encode(Event(LinkKeyRequest{Addr("01:02:03:04:05:06")})),
            (Bytes{0x04, 0x17, 0x06, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01}));
  Bytes notification = Encode(Event(LinkKeyNotification{
      Addr("01:02:03:04:05:06"), Key("000102030405060708090a0b0c0d0e0f"),
      KeyType::kUnauthenticated}));
  ASSERT_EQ(notification.size(), 3u + 23u);
  EXPECT_EQ(notification[2], 23);
  EXPECT_EQ(notification.back(), 0x04);
}

TEST(HciCodec, FailedEncryptionCannotBeEnabled) {
  try {
    Encode(Event(EncryptionChange{ErrorCode::kAuthenticationFailure, 1, true}));
    FAIL() << "expected CodecError";
  } catch (const CodecError& e) {
    EXPECT_EQ(e.kind(), CodecErrorKind::kInvalidParameters);
  }
}

TEST(HciCodec, OversizedParametersRejected) {
  try {
    Encode(Command(RawCommand{0xFC01, Bytes(256, 0xAA)}));
    FAIL() << "expected CodecError";
  } catch (const CodecError& e) {
    EXPECT_EQ(e.kind(), CodecErrorKind::kOversizedParameters);
  }
  EXPECT_NO_THROW(Encode(Command(RawCommand{0xFC01, Bytes(255, 0xAA)})));
}

TEST(HciCodec, FramingErrors) {
  EXPECT_EQ(DecodeErrorOf({0x07, 0x00}), CodecErrorKind::kBadIndicator);
  EXPECT_EQ(DecodeErrorOf({}), CodecErrorKind::kTruncated);
  EXPECT_EQ(DecodeErrorOf({0x04, 0xFF, 0x00, 0x00}), CodecErrorKind::kTrailingBytes);
}

TEST(HciCodec, MalformedKnownCodesFallBackToRaw) {
  // Disconnect with one parameter octet too many.
  Packet p = Decode(Bytes{0x01, 0x06, 0x04, 0x04, 0x01, 0x00, 0x05, 0x00});
  EXPECT_EQ(p, Packet(Command(RawCommand{opcode::kDisconnect, {0x01, 0x00, 0x05, 0x00}})));
  // Authentication Complete with an unmodelled status.
  Packet q = Decode(Bytes{0x04, 0x06, 0x03, 0x07, 0x01, 0x00});
  EXPECT_EQ(q, Packet(Event(RawEvent{event_code::kAuthenticationComplete, {0x07, 0x01, 0x00}})));
  EXPECT_EQ(Encode(q), (Bytes{0x04, 0x06, 0x03, 0x07, 0x01, 0x00}));
}

TEST(HciCodec, DecodePrefixReportsConsumed) {
  Bytes two = Encode(Command(AuthenticationRequested{3}));
  Bytes second = Encode(Event(LinkKeyRequest{Addr("01:02:03:04:05:06")}));
  two.insert(two.end(), second.begin(), second.end());
  auto first = DecodePrefix(two);
  EXPECT_EQ(first.consumed, 6u);
  EXPECT_EQ(first.packet, Packet(Command(AuthenticationRequested{3})));
}

TEST(HciCodec, AclFraming) {
  AclData acl{0x2001, {0xDE, 0xAD}};
  EXPECT_EQ(Encode(acl), (Bytes{0x02, 0x01, 0x20, 0x02, 0x00, 0xDE, 0xAD}));
  EXPECT_EQ(Decode(Encode(acl)), Packet(acl));
}

TEST(HciCodecProperty, RandomTypedPacketsRoundTrip) {
  testing::PacketGen gen(0xC0DEC);
  size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    Packet p = gen.Packet();
    Bytes bytes = Encode(p);
    if (Decode(bytes) != p || Encode(Decode(bytes)) != bytes) ++failures;
  }
  EXPECT_EQ(failures, 0u);
}

TEST(HciCodecProperty, EveryStrictPrefixIsTruncated) {
  testing::PacketGen gen(17);
  for (int i = 0; i < 300; ++i) {
    Bytes bytes = Encode(gen.Packet());
    size_t cut = gen.Below(bytes.size());
    Bytes clipped(bytes.begin(), bytes.begin() + static_cast<long>(cut));
    EXPECT_EQ(DecodeErrorOf(clipped), CodecErrorKind::kTruncated);
  }
}

}  // namespace
}  // namespace authlab::hci
