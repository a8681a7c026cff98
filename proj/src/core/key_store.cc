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

#include "authlab/core/key_store.h"

namespace authlab {

void KeyStore::Put(const LinkKeyRecord& record) {
  records_.insert_or_assign(Slot{record.peer, record.transport}, record);
}

KeyDeletion KeyStore::Delete(const DeviceAddress& peer, Transport transport,
                             DeletionCause cause) {
  KeyDeletion audit{peer, transport, false, false, cause};
  auto it = records_.find(Slot{peer, transport});
  if (it != records_.end()) {
    audit.existed = true;
    audit.bonded = it->second.bonded;
    records_.erase(it);
  }
  if (bus_ != nullptr) {
    bus_->Publish(clock_ != nullptr ? clock_->now() : 0, owner_, audit);
  }
  return audit;
}

std::optional<LinkKeyRecord> KeyStore::Find(const DeviceAddress& peer,
                                            Transport transport) const {
  auto it = records_.find(Slot{peer, transport});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<LinkKeyRecord> KeyStore::Records() const {
  std::vector<LinkKeyRecord> out;
  out.reserve(records_.size());
  for (const auto& [slot, record] : records_) out.push_back(record);
  return out;
}

KeyStoreDelta Diff(const std::vector<LinkKeyRecord>& before,
                   const std::vector<LinkKeyRecord>& after) {
  std::map<KeyStore::Slot, LinkKeyRecord> old_slots;
  std::map<KeyStore::Slot, LinkKeyRecord> new_slots;
  for (const auto& r : before) old_slots.insert_or_assign({r.peer, r.transport}, r);
  for (const auto& r : after) new_slots.insert_or_assign({r.peer, r.transport}, r);

  KeyStoreDelta delta;
  for (const auto& [slot, record] : old_slots) {
    auto it = new_slots.find(slot);
    if (it == new_slots.end()) {
      delta.removed.push_back(record);
    } else if (!(it->second == record)) {
      delta.changed.emplace_back(record, it->second);
    }
  }
  for (const auto& [slot, record] : new_slots) {
    if (!old_slots.contains(slot)) delta.added.push_back(record);
  }
  return delta;
}

}  // namespace authlab
