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

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/sim_clock.h"
#include "authlab/core/types.h"

namespace authlab {

struct LinkKeyRecord {
  DeviceAddress peer;
  LinkKey key;
  KeyType key_type = KeyType::kUnauthenticated;
  bool bonded = false;
  Transport transport = Transport::kBtClassic;
  friend bool operator==(const LinkKeyRecord&, const LinkKeyRecord&) = default;
};

// Per-device key database, one record per (peer, transport).
class KeyStore {
 public:
  using Slot = std::pair<DeviceAddress, Transport>;

  KeyStore() = default;

  // Routes deletion audits to `bus` on behalf of `owner`.
  void AttachAudit(EventBus* bus, const SimClock* clock, DeviceAddress owner) {
    bus_ = bus;
    clock_ = clock;
    owner_ = owner;
  }

  // Inserts or replaces the record for (record.peer, record.transport).
  void Put(const LinkKeyRecord& record);

  // Removes the record if present. Every call is audited, including
  // deletions of absent records.
  KeyDeletion Delete(const DeviceAddress& peer, Transport transport,
                     DeletionCause cause = DeletionCause::kStack);

  std::optional<LinkKeyRecord> Find(const DeviceAddress& peer,
                                    Transport transport) const;

  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::vector<LinkKeyRecord> Records() const;

 private:
  std::map<Slot, LinkKeyRecord> records_;
  EventBus* bus_ = nullptr;
  const SimClock* clock_ = nullptr;
  DeviceAddress owner_;
};

struct KeyStoreDelta {
  std::vector<LinkKeyRecord> added;
  std::vector<LinkKeyRecord> removed;
  // (before, after) for slots whose record changed.
  std::vector<std::pair<LinkKeyRecord, LinkKeyRecord>> changed;

  bool empty() const { return added.empty() && removed.empty() && changed.empty(); }
};

KeyStoreDelta Diff(const std::vector<LinkKeyRecord>& before,
                   const std::vector<LinkKeyRecord>& after);

}  // namespace authlab
