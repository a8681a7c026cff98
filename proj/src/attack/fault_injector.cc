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

#include "authlab/attack/fault_injector.h"

namespace authlab::attack {

std::string_view ToString(TargetCommand target) {
  switch (target) {
    case TargetCommand::kLinkKeyRequestReply:
      return "LINK_KEY_REQUEST_REPLY";
    case TargetCommand::kLeEnableEncryption:
      return "LE_ENABLE_ENCRYPTION";
  }
  return "?";
}

std::optional<TargetCommand> TargetCommandFromString(std::string_view text) {
  if (text == "LINK_KEY_REQUEST_REPLY") return TargetCommand::kLinkKeyRequestReply;
  if (text == "LE_ENABLE_ENCRYPTION") return TargetCommand::kLeEnableEncryption;
  return std::nullopt;
}

void Validate(const FaultRule& rule) {
  if (rule.window.empty()) {
    throw FaultRuleError("fault rule window [" + std::to_string(rule.window.begin) + ", " +
                         std::to_string(rule.window.end) + ") is empty");
  }
}

InjectionResult Inject(const FaultRule& rule, size_t rule_index,
                       const hci::Command& command, const InjectionContext& context) {
  InjectionResult result{command, std::nullopt};
  if (!rule.window.Contains(context.step)) return result;

  auto matches_peer = [&](const std::optional<DeviceAddress>& peer) {
    return !rule.match_peer || (peer && *peer == *rule.match_peer);
  };
  auto audit_for = [&](const DeviceAddress& peer, const LinkKey& original) {
    return InjectionAudit{rule_index,
                          hci::OpcodeOf(command),
                          peer,
                          original,
                          rule.replacement,
                          context.step,
                          original == rule.replacement};
  };

  if (rule.target == TargetCommand::kLinkKeyRequestReply) {
    const auto* reply = std::get_if<hci::LinkKeyRequestReply>(&command);
    if (reply == nullptr || !matches_peer(reply->peer)) return result;
    result.audit = audit_for(reply->peer, reply->key);
    hci::LinkKeyRequestReply replaced = *reply;
    replaced.key = rule.replacement;
    result.command = replaced;
    return result;
  }

  const auto* start = std::get_if<hci::LeEnableEncryption>(&command);
  if (start == nullptr) return result;
  std::optional<DeviceAddress> peer;
  if (context.peer_of_handle) peer = context.peer_of_handle(start->handle);
  if (!matches_peer(peer)) return result;
  result.audit = audit_for(peer.value_or(DeviceAddress{}), start->ltk);
  hci::LeEnableEncryption replaced = *start;
  replaced.ltk = rule.replacement;
  result.command = replaced;
  return result;
}

void FaultInjector::AddRule(FaultRule rule) {
  Validate(rule);
  rules_.push_back(std::move(rule));
}

InjectionResult FaultInjector::Apply(const hci::Command& command,
                                     const InjectionContext& context) const {
  for (size_t i = 0; i < rules_.size(); ++i) {
    auto result = Inject(rules_[i], i, command, context);
    if (result.audit) return result;
  }
  return {command, std::nullopt};
}

}  // namespace authlab::attack
