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

#include "authlab/linklayer/link_controller.h"

namespace authlab::linklayer {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

size_t Index(Side side) { return side == Side::kInitiator ? 0 : 1; }

}  // namespace

LinkController::LinkController(Connection connection, HostPort& initiator,
                               HostPort& responder, Scheduler& scheduler,
                               ScenarioRng& rng)
    : connection_(std::move(connection)),
      initiator_(initiator),
      responder_(responder),
      scheduler_(scheduler),
      rng_(rng) {}

void LinkController::Submit(Side from, hci::Command command) {
  scheduler_.Post([this, from, command = std::move(command)] { Process(from, command); });
}

void LinkController::Process(Side from, const hci::Command& command) {
  auto reject = [&](const std::string& why) {
    rejected_.push_back(hci::Describe(command) + ": " + why);
  };
  try {
    std::visit(
        Overloaded{
            [&](const hci::AuthenticationRequested&) {
              if (from != Side::kInitiator) return reject("responder cannot initiate");
              if (connection_.transport() != Transport::kBtClassic ||
                  connection_.state() != LinkState::kConnected || awaiting_keys_) {
                return reject("link not ready for authentication");
              }
              awaiting_keys_ = true;
              key_answered_ = {false, false};
              keys_ = {std::nullopt, std::nullopt};
              DeliverTo(Side::kInitiator, hci::LinkKeyRequest{connection_.responder()});
              DeliverTo(Side::kResponder, hci::LinkKeyRequest{connection_.initiator()});
            },
            [&](const hci::LinkKeyRequestReply& c) {
              if (!awaiting_keys_) return reject("no outstanding link key request");
              OnLinkKeyReply(from, c.key);
            },
            [&](const hci::LinkKeyRequestNegativeReply&) {
              if (!awaiting_keys_) return reject("no outstanding link key request");
              OnLinkKeyReply(from, std::nullopt);
            },
            [&](const hci::LeEnableEncryption& c) {
              if (from != Side::kInitiator) return reject("only the central starts encryption");
              auto responder_ltk = responder_.LongTermKey(connection_.initiator());
              if (!responder_ltk) {
                if (connection_.state() != LinkState::kConnected) {
                  return reject("link not ready for encryption");
                }
                DeliverTo(Side::kInitiator,
                          hci::EncryptionChange{ErrorCode::kPinOrKeyMissing,
                                                connection_.handle(), false});
                return;
              }
              Deliver(LinkOps::RunBleEncryptionStart(connection_, c.ltk, *responder_ltk, rng_)
                          .deliveries);
            },
            [&](const hci::Disconnect& c) {
              awaiting_keys_ = false;
              Deliver(LinkOps::Detach(connection_, c.reason));
            },
            [&](const hci::RawCommand&) { reject("unsupported command"); },
        },
        command);
  } catch (const InvalidStateError& e) {
    reject(e.what());
  }
}

void LinkController::OnLinkKeyReply(Side from, std::optional<LinkKey> key) {
  size_t i = Index(from);
  if (key_answered_[i]) {
    rejected_.push_back("duplicate link key reply");
    return;
  }
  key_answered_[i] = true;
  keys_[i] = key;
  if (!key_answered_[0] || !key_answered_[1]) return;
  awaiting_keys_ = false;
  Deliver(LinkOps::RunBtAuthentication(connection_, keys_[0], keys_[1], rng_).deliveries);
}

void LinkController::Deliver(const HostDeliveries& deliveries) {
  for (const auto& e : deliveries.to_initiator) DeliverTo(Side::kInitiator, e);
  for (const auto& e : deliveries.to_responder) DeliverTo(Side::kResponder, e);
}

void LinkController::DeliverTo(Side side, const hci::Event& event) {
  HostPort& port = PortOf(side);
  scheduler_.Post([&port, event] { port.OnEvent(event); });
}

}  // namespace authlab::linklayer
