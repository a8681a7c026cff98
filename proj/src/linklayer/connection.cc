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

#include "authlab/linklayer/connection.h"

#include "authlab/linklayer/auth.h"

namespace authlab::linklayer {

std::string_view ToString(LinkState state) {
  switch (state) {
    case LinkState::kIdle:
      return "IDLE";
    case LinkState::kConnected:
      return "CONNECTED";
    case LinkState::kAuthenticating:
      return "AUTHENTICATING";
    case LinkState::kEncrypted:
      return "ENCRYPTED";
    case LinkState::kDetached:
      return "DETACHED";
  }
  return "?";
}

AuthOutcome LinkOps::RunBtAuthentication(Connection& conn,
                                         const std::optional<LinkKey>& initiator_key,
                                         const std::optional<LinkKey>& responder_key,
                                         ScenarioRng& rng) {
  if (conn.state_ != LinkState::kConnected && conn.state_ != LinkState::kAuthenticating) {
    throw InvalidStateError("authentication requires a connected link, state is " +
                            std::string(ToString(conn.state_)));
  }
  if (conn.transport_ != Transport::kBtClassic) {
    throw InvalidStateError("authentication requires a BR/EDR link");
  }
  conn.state_ = LinkState::kAuthenticating;

  AuthOutcome outcome;
  if (!initiator_key || !responder_key) {
    outcome.status = ErrorCode::kPinOrKeyMissing;
  } else {
    // Initiator verifies responder, then responder verifies initiator.
    Challenge to_responder = DrawChallenge(rng);
    bool responder_ok = AuthResponse(*responder_key, to_responder, conn.responder_) ==
                        AuthResponse(*initiator_key, to_responder, conn.responder_);
    Challenge to_initiator = DrawChallenge(rng);
    bool initiator_ok = AuthResponse(*initiator_key, to_initiator, conn.initiator_) ==
                        AuthResponse(*responder_key, to_initiator, conn.initiator_);
    outcome.status = responder_ok && initiator_ok ? ErrorCode::kSuccess
                                                  : ErrorCode::kAuthenticationFailure;
  }

  outcome.deliveries.to_initiator.push_back(
      hci::AuthenticationComplete{outcome.status, conn.handle_});
  if (outcome.status == ErrorCode::kSuccess) {
    conn.state_ = LinkState::kEncrypted;
    hci::EncryptionChange on{ErrorCode::kSuccess, conn.handle_, true};
    outcome.deliveries.to_initiator.push_back(on);
    outcome.deliveries.to_responder.push_back(on);
  }
  return outcome;
}

EncryptionOutcome LinkOps::RunBleEncryptionStart(Connection& conn,
                                                 const LinkKey& initiator_ltk,
                                                 const LinkKey& responder_ltk,
                                                 ScenarioRng& rng) {
  if (conn.state_ != LinkState::kConnected) {
    throw InvalidStateError("encryption start requires a connected link, state is " +
                            std::string(ToString(conn.state_)));
  }
  if (conn.transport_ != Transport::kBle) {
    throw InvalidStateError("encryption start requires an LE link");
  }

  Challenge nonce = DrawChallenge(rng);
  bool match = AuthResponse(initiator_ltk, nonce, conn.initiator_) ==
               AuthResponse(responder_ltk, nonce, conn.initiator_);

  EncryptionOutcome outcome;
  if (match) {
    conn.state_ = LinkState::kEncrypted;
    outcome.status = ErrorCode::kSuccess;
    outcome.enabled = true;
    hci::EncryptionChange on{ErrorCode::kSuccess, conn.handle_, true};
    outcome.deliveries.to_initiator.push_back(on);
    outcome.deliveries.to_responder.push_back(on);
  } else {
    outcome.status = ErrorCode::kAuthenticationFailure;
    outcome.enabled = false;
    outcome.deliveries.to_initiator.push_back(
        hci::EncryptionChange{outcome.status, conn.handle_, false});
  }
  return outcome;
}

HostDeliveries LinkOps::Detach(Connection& conn, ErrorCode reason) {
  if (conn.state_ == LinkState::kDetached) {
    throw InvalidStateError("link already detached");
  }
  conn.state_ = LinkState::kDetached;
  conn.detach_reason_ = reason;
  hci::DisconnectionComplete event{ErrorCode::kSuccess, conn.handle_, reason};
  return HostDeliveries{{event}, {event}};
}

}  // namespace authlab::linklayer
