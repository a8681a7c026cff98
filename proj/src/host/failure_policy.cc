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

#include "authlab/host/failure_policy.h"

namespace authlab::host {

std::string_view ToString(FailureAction action) {
  switch (action) {
    case FailureAction::kNotifySecurityFailure:
      return "NOTIFY_SECURITY_FAILURE";
    case FailureAction::kAutoRepair:
      return "AUTO_REPAIR";
    case FailureAction::kAskUserThenRepair:
      return "ASK_USER_THEN_REPAIR";
  }
  return "?";
}

std::string_view ToString(OptionPolicy policy) {
  switch (policy) {
    case OptionPolicy::kRecommended:
      return "recommended";
    case OptionPolicy::kOption1:
      return "option1";
    case OptionPolicy::kOption2:
      return "option2";
  }
  return "?";
}

std::optional<OptionPolicy> OptionPolicyFromString(std::string_view text) {
  for (auto p : {OptionPolicy::kRecommended, OptionPolicy::kOption1, OptionPolicy::kOption2}) {
    if (ToString(p) == text) return p;
  }
  return std::nullopt;
}

FailureDecision DecideFailureAction(KeyType key_type, bool bonded, OptionPolicy policy) {
  if (bonded) return {key_type, true, FailureAction::kNotifySecurityFailure, true};

  // Only unauthenticated keys recommend option 1.
  const bool option1_recommended = key_type == KeyType::kUnauthenticated;
  bool use_option1 = false;
  switch (policy) {
    case OptionPolicy::kRecommended:
      use_option1 = option1_recommended;
      break;
    case OptionPolicy::kOption1:
      use_option1 = true;
      break;
    case OptionPolicy::kOption2:
      use_option1 = false;
      break;
  }
  return {key_type, false,
          use_option1 ? FailureAction::kAutoRepair : FailureAction::kAskUserThenRepair,
          use_option1 == option1_recommended};
}

FailureReaction ReferencePolicy::OnFailure(const FailureContext& context) const {
  FailureReaction reaction;
  if (context.reported_by_controller) {
    reaction.disconnect_reason = ErrorCode::kAuthenticationFailure;
  }

  if (!context.record) {
    // Nothing to protect; a new pairing needs the user's approval.
    if (context.reported_by_controller) {
      reaction.surface.push_back({SurfaceKind::kRepairConsentPrompt, context.peer, {}});
      reaction.repair = RepairMode::kAskUser;
    }
    return reaction;
  }

  const auto decision =
      DecideFailureAction(context.record->key_type, context.record->bonded, option_);
  switch (decision.action) {
    case FailureAction::kNotifySecurityFailure:
      reaction.surface.push_back({SurfaceKind::kSecurityFailureWarning, context.peer, {}});
      break;
    case FailureAction::kAutoRepair:
      if (context.reported_by_controller) reaction.repair = RepairMode::kAutomatic;
      break;
    case FailureAction::kAskUserThenRepair:
      if (context.reported_by_controller) {
        reaction.surface.push_back({SurfaceKind::kRepairConsentPrompt, context.peer, {}});
        reaction.repair = RepairMode::kAskUser;
      }
      break;
  }
  return reaction;
}

}  // namespace authlab::host
