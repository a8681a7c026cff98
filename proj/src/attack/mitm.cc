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

#include "authlab/attack/mitm.h"

namespace authlab::attack {

void MitmNode::Intercept(const LinkKeyRecord& with_a, const LinkKeyRecord& with_b) {
  if (with_a.key == with_b.key) {
    throw std::invalid_argument("MitM keys with both victims must differ");
  }
  store_.Put(with_a);
  store_.Put(with_b);
}

std::optional<LinkKey> MitmNode::KeyFor(const DeviceAddress& victim, Transport transport) const {
  if (auto record = store_.Find(victim, transport)) return record->key;
  return std::nullopt;
}

bool MitmNode::HoldsPairing(const DeviceAddress& a, const DeviceAddress& b,
                            Transport transport) const {
  return store_.Find(a, transport).has_value() && store_.Find(b, transport).has_value();
}

std::string_view ToString(Route route) {
  switch (route) {
    case Route::kDirect:
      return "DIRECT";
    case Route::kRelay:
      return "RELAY";
    case Route::kImpersonate:
      return "IMPERSONATE";
  }
  return "?";
}

Route PlanRoute(const MitmNode* node, const ConnectionAttempt& attempt) {
  if (node == nullptr || !node->present()) return Route::kDirect;
  if (node->HoldsPairing(attempt.initiator, attempt.responder, attempt.transport)) {
    return Route::kRelay;
  }
  return Route::kImpersonate;
}

}  // namespace authlab::attack
