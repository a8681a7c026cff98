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

#include "authlab/host/host.h"

#include <algorithm>

namespace authlab::host {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void Host::OnConnected(uint16_t handle, const DeviceAddress& peer, Transport transport,
                       bool initiator) {
  links_.insert_or_assign(handle, Link{peer, transport, initiator});
}

HostOutput Host::StartSecurity(uint16_t handle) {
  HostOutput out;
  auto it = links_.find(handle);
  if (it == links_.end() || it->second.failed) return out;
  Link& link = it->second;
  if (link.transport == Transport::kBtClassic) {
    out.commands.push_back(hci::AuthenticationRequested{handle});
    return out;
  }
  auto ltk = LongTermKey(link.peer);
  if (!ltk) return HandleFailure(handle, link, ErrorCode::kPinOrKeyMissing, true);
  out.commands.push_back(hci::LeEnableEncryption{handle, 0, 0, *ltk});
  return out;
}

hci::Command Host::OnLinkKeyRequest(const DeviceAddress& peer) const {
  if (auto record = store_.Find(peer, Transport::kBtClassic)) {
    return hci::LinkKeyRequestReply{peer, record->key};
  }
  return hci::LinkKeyRequestNegativeReply{peer};
}

std::optional<LinkKey> Host::LongTermKey(const DeviceAddress& peer) const {
  if (auto record = store_.Find(peer, Transport::kBle)) return record->key;
  return std::nullopt;
}

HostOutput Host::OnAuthenticationFailure(uint16_t handle, ErrorCode status) {
  auto it = links_.find(handle);
  if (it == links_.end()) return {};
  return HandleFailure(handle, it->second, status, true);
}

HostOutput Host::HandleFailure(uint16_t handle, Link& link, ErrorCode status,
                               bool reported_by_controller) {
  HostOutput out;
  if (link.failed) return out;
  link.failed = true;
  ++failures_handled_;

  FailureContext context{link.peer, link.transport, status,
                         store_.Find(link.peer, link.transport), reported_by_controller};
  FailureReaction reaction = policy_->OnFailure(context);

  bool deleted = false;
  if (reaction.delete_key) deleted = store_.Delete(link.peer, link.transport).existed;

  for (auto& event : reaction.surface) {
    // A silent deletion is only reported when a key actually went away.
    if (event.kind == SurfaceKind::kSilentKeyDeletion && !deleted) continue;
    event.peer = link.peer;
    out.surface.push_back(std::move(event));
  }
  if (reaction.disconnect_reason && !link.disconnect_sent) {
    link.disconnect_sent = true;
    out.commands.push_back(hci::Disconnect{handle, *reaction.disconnect_reason});
  }
  if (reaction.repair != RepairMode::kNone) {
    out.repair = RepairRequest{link.peer, link.transport, reaction.repair};
  }
  return out;
}

HostOutput Host::HandleEvent(const hci::Event& event) {
  HostOutput out;
  std::visit(
      Overloaded{
          [&](const hci::LinkKeyRequest& e) {
            out.commands.push_back(OnLinkKeyRequest(e.peer));
          },
          [&](const hci::AuthenticationComplete& e) {
            if (e.status != ErrorCode::kSuccess) out = OnAuthenticationFailure(e.handle, e.status);
          },
          [&](const hci::EncryptionChange& e) {
            if (e.enabled) return;
            ErrorCode status =
                e.status == ErrorCode::kSuccess ? ErrorCode::kAuthenticationFailure : e.status;
            out = OnAuthenticationFailure(e.handle, status);
          },
          [&](const hci::DisconnectionComplete& e) {
            auto it = links_.find(e.handle);
            if (it == links_.end()) return;
            if (!it->second.failed && e.reason == ErrorCode::kAuthenticationFailure) {
              out = HandleFailure(e.handle, it->second, e.reason, false);
            }
            links_.erase(e.handle);
          },
          [&](const hci::LinkKeyNotification& e) {
            bool bond = true;
            if (auto it = pending_bond_.find(e.peer); it != pending_bond_.end()) {
              bond = it->second;
              pending_bond_.erase(it);
            }
            store_.Put(LinkKeyRecord{e.peer, e.key, e.key_type, bond, Transport::kBtClassic});
          },
          [](const hci::RawEvent&) {},
      },
      event);
  return out;
}

bool Host::IsConnected(uint16_t handle) const { return links_.contains(handle); }

bool Host::HasFailed(uint16_t handle) const {
  auto it = links_.find(handle);
  return it != links_.end() && it->second.failed;
}

}  // namespace authlab::host
