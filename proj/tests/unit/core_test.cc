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

#include "authlab/core/address.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/key_store.h"
#include "authlab/core/rng.h"
#include "authlab/core/sim_clock.h"
#include "test_util.h"

namespace authlab {
namespace {

using testing::Addr;
using testing::Key;

TEST(DeviceAddress, ParsesAndFormatsDisplayOrder) {
  auto a = DeviceAddress::FromString("00:1a:7D:DA:71:13");
  ASSERT_TRUE(a);
  EXPECT_EQ(a->octets()[0], 0x00);
  EXPECT_EQ(a->octets()[5], 0x13);
  EXPECT_EQ(a->ToString(), "00:1A:7D:DA:71:13");
}

TEST(DeviceAddress, WireOrderIsReversed) {
  auto a = Addr("01:02:03:04:05:06");
  DeviceAddress::Octets wire = {0x06, 0x05, 0x04, 0x03, 0x02, 0x01};
  EXPECT_EQ(a.ToWire(), wire);
  EXPECT_EQ(DeviceAddress::FromWire(wire), a);
}

TEST(DeviceAddress, RejectsMalformedText) {
  EXPECT_FALSE(DeviceAddress::FromString(""));
  EXPECT_FALSE(DeviceAddress::FromString("00:1A:7D:DA:71"));
  EXPECT_FALSE(DeviceAddress::FromString("00-1A-7D-DA-71-13"));
  EXPECT_FALSE(DeviceAddress::FromString("00:1A:7D:DA:71:1G"));
}

TEST(LinkKey, HexRoundTrip) {
  auto k = LinkKey::FromHex("0x000102030405060708090A0B0C0D0E0F");
  ASSERT_TRUE(k);
  EXPECT_EQ(k->octets()[0], 0x00);
  EXPECT_EQ(k->octets()[15], 0x0F);
  EXPECT_EQ(k->ToHex(), "000102030405060708090a0b0c0d0e0f");
  EXPECT_FALSE(LinkKey::FromHex("0011"));
  EXPECT_FALSE(LinkKey::FromHex("zz0102030405060708090a0b0c0d0e0f"));
}

TEST(Enums, StringsRoundTrip) {
  for (auto t : {KeyType::kCombination, KeyType::kUnauthenticated, KeyType::kAuthenticated}) {
    EXPECT_EQ(KeyTypeFromString(ToString(t)), t);
    EXPECT_EQ(KeyTypeFromOctet(static_cast<uint8_t>(t)), t);
  }
  for (auto t : {Transport::kBtClassic, Transport::kBle}) {
    EXPECT_EQ(TransportFromString(ToString(t)), t);
  }
  EXPECT_EQ(ErrorCodeFromOctet(0x13), ErrorCode::kRemoteUserTerminated);
  EXPECT_FALSE(ErrorCodeFromOctet(0x07));
  EXPECT_FALSE(KeyTypeFromOctet(0x03));
}

TEST(Scheduler, RunsInOrderAndAdvancesOneSlotPerTask) {
  Scheduler s;
  std::vector<int> order;
  s.Post([&] {
    order.push_back(1);
    s.Post([&] { order.push_back(3); });
  });
  s.Post([&] { order.push_back(2); });
  EXPECT_EQ(s.RunUntilIdle(), 3u);
  EXPECT_EQ(order, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.now(), 3 * Scheduler::kSlotMicros);
  s.Idle(1000);
  EXPECT_EQ(s.now(), 3 * Scheduler::kSlotMicros + 1000);
}

TEST(ScenarioRng, SameSeedSameSequence) {
  ScenarioRng a(99), b(99), c(100);
  EXPECT_EQ(a.NextKey(), b.NextKey());
  EXPECT_EQ(a.Next(), b.Next());
  EXPECT_NE(ScenarioRng(99).NextKey(), c.NextKey());
}

TEST(KeyStore, DeletionIsAuditedEvenWhenAbsent) {
  EventBus bus;
  Scheduler s;
  KeyStore store;
  auto owner = Addr("3C:28:6D:11:22:33");
  auto peer = Addr("00:1A:7D:DA:71:13");
  store.AttachAudit(&bus, &s.clock(), owner);
  store.Put({peer, Key("000102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
             Transport::kBtClassic});

  auto first = store.Delete(peer, Transport::kBtClassic);
  EXPECT_TRUE(first.existed);
  EXPECT_TRUE(first.bonded);
  auto second = store.Delete(peer, Transport::kBtClassic, DeletionCause::kUserReset);
  EXPECT_FALSE(second.existed);

  ASSERT_EQ(bus.size(), 2u);
  EXPECT_EQ(bus.events()[0].device, owner);
  EXPECT_EQ(std::get<KeyDeletion>(bus.events()[1].payload).cause, DeletionCause::kUserReset);
  EXPECT_EQ(bus.IndicesOf<KeyDeletion>(owner), (std::vector<size_t>{0, 1}));
  EXPECT_TRUE(bus.IndicesOf<KeyDeletion>(peer).empty());
}

TEST(KeyStore, SlotsAreKeyedByPeerAndTransport) {
  KeyStore store;
  auto peer = Addr("00:1A:7D:DA:71:13");
  store.Put({peer, Key("000102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
             Transport::kBtClassic});
  store.Put({peer, Key("ff0102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
             Transport::kBle});
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.Find(peer, Transport::kBle)->key, Key("ff0102030405060708090a0b0c0d0e0f"));
  store.Put({peer, Key("ee0102030405060708090a0b0c0d0e0f"), KeyType::kUnauthenticated, false,
             Transport::kBle});
  EXPECT_EQ(store.size(), 2u);
  EXPECT_EQ(store.Find(peer, Transport::kBle)->key_type, KeyType::kUnauthenticated);
}

TEST(KeyStore, DiffReportsAddedRemovedChanged) {
  auto a = Addr("00:00:00:00:00:01");
  auto b = Addr("00:00:00:00:00:02");
  auto c = Addr("00:00:00:00:00:03");
  LinkKeyRecord ra{a, Key("000102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
                   Transport::kBtClassic};
  LinkKeyRecord rb{b, Key("100102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
                   Transport::kBtClassic};
  LinkKeyRecord rb2 = rb;
  rb2.key = Key("200102030405060708090a0b0c0d0e0f");
  LinkKeyRecord rc{c, Key("300102030405060708090a0b0c0d0e0f"), KeyType::kAuthenticated, true,
                   Transport::kBtClassic};

  auto delta = Diff({ra, rb}, {rb2, rc});
  ASSERT_EQ(delta.removed.size(), 1u);
  EXPECT_EQ(delta.removed[0], ra);
  ASSERT_EQ(delta.changed.size(), 1u);
  EXPECT_EQ(delta.changed[0].second, rb2);
  ASSERT_EQ(delta.added.size(), 1u);
  EXPECT_EQ(delta.added[0], rc);
  EXPECT_TRUE(Diff({ra}, {ra}).empty());
}

}  // namespace
}  // namespace authlab
