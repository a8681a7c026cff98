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

#include "authlab/profiles/stack_profile.h"

#include <algorithm>

namespace authlab::profiles {

namespace {

// Wraps ReferencePolicy so BLE support can still be switched off.
class ReferenceProfilePolicy final : public host::HostPolicy {
 public:
  explicit ReferenceProfilePolicy(StackProfile profile)
      : profile_(std::move(profile)), reference_(profile_.option) {}

  std::string name() const override { return profile_.name; }
  host::FailureReaction OnFailure(const host::FailureContext& context) const override {
    return reference_.OnFailure(context);
  }
  bool SupportsTransport(Transport transport) const override {
    return transport != Transport::kBle || profile_.supports_ble;
  }

 private:
  StackProfile profile_;
  host::ReferencePolicy reference_;
};

}  // namespace

std::string_view ToString(FailureBehavior behavior) {
  switch (behavior) {
    case FailureBehavior::kSilentDeletePairing:
      return "SILENT_DELETE_PAIRING";
    case FailureBehavior::kGenericError:
      return "GENERIC_ERROR";
    case FailureBehavior::kIndicatorOnly:
      return "INDICATOR_ONLY";
    case FailureBehavior::kNoIndication:
      return "NO_INDICATION";
    case FailureBehavior::kSpecCompliant:
      return "SPEC_COMPLIANT";
  }
  return "?";
}

std::optional<FailureBehavior> FailureBehaviorFromString(std::string_view text) {
  for (auto b : {FailureBehavior::kSilentDeletePairing, FailureBehavior::kGenericError,
                 FailureBehavior::kIndicatorOnly, FailureBehavior::kNoIndication,
                 FailureBehavior::kSpecCompliant}) {
    if (ToString(b) == text) return b;
  }
  return std::nullopt;
}

void Validate(const StackProfile& profile) {
  if (profile.name.empty()) throw ProfileError("profile name is empty");
  if (profile.on_auth_failure == FailureBehavior::kSilentDeletePairing &&
      profile.key_survives_failure) {
    throw ProfileError("profile '" + profile.name +
                       "': SILENT_DELETE_PAIRING requires key_survives=false");
  }
}

void ProfileRegistry::Add(StackProfile profile) {
  Validate(profile);
  if (Find(profile.name) != nullptr) {
    throw ProfileError("duplicate profile '" + profile.name + "'");
  }
  profiles_.push_back(std::move(profile));
}

void ProfileRegistry::Upsert(StackProfile profile) {
  Validate(profile);
  auto it = std::find_if(profiles_.begin(), profiles_.end(),
                         [&](const StackProfile& p) { return p.name == profile.name; });
  if (it != profiles_.end()) {
    *it = std::move(profile);
  } else {
    profiles_.push_back(std::move(profile));
  }
}

const StackProfile* ProfileRegistry::Find(std::string_view name) const {
  for (const auto& p : profiles_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const StackProfile& ProfileRegistry::Get(std::string_view name) const {
  if (const auto* p = Find(name)) return *p;
  throw ProfileError("unknown profile '" + std::string(name) + "'");
}

std::vector<std::string> ProfileRegistry::Names() const {
  std::vector<std::string> names;
  for (const auto& p : profiles_) names.push_back(p.name);
  return names;
}

ProfileRegistry BuiltinProfiles() {
  ProfileRegistry registry;

  // Pixel / Nexus: the pairing entry vanishes, and a missing key is
  // answered with a fresh Just Works pairing.
  registry.Add({.name = "google-android",
                .on_auth_failure = FailureBehavior::kSilentDeletePairing,
                .disconnect_reason_bug = true,
                .key_survives_failure = false,
                .repair_on_missing_key = true});
  registry.Add({.name = "samsung-android",
                .on_auth_failure = FailureBehavior::kGenericError,
                .error_text = "Couldn't connect.",
                .disconnect_reason_bug = true});
  // Third-party LE devices cannot be bonded from the iOS UI.
  registry.Add({.name = "ios",
                .on_auth_failure = FailureBehavior::kGenericError,
                .error_text = "Connection Unsuccessful",
                .supports_ble = false});
  registry.Add({.name = "macos", .on_auth_failure = FailureBehavior::kIndicatorOnly});
  // GNOME does not reconnect to bonded LE devices.
  registry.Add({.name = "gnome-bluez",
                .on_auth_failure = FailureBehavior::kIndicatorOnly,
                .supports_ble = false});
  registry.Add({.name = "windows",
                .on_auth_failure = FailureBehavior::kGenericError,
                .error_text =
                    "An unexpected error occurred. Please contact your system administrator."});
  registry.Add({.name = "peripheral", .on_auth_failure = FailureBehavior::kNoIndication});
  registry.Add({.name = std::string(kReferenceProfile),
                .on_auth_failure = FailureBehavior::kSpecCompliant});
  return registry;
}

host::FailureReaction ProfilePolicy::OnFailure(const host::FailureContext& context) const {
  host::FailureReaction reaction;
  // None of the emulated stacks react to a disconnect they did not cause.
  if (!context.reported_by_controller) return reaction;

  if (profile_.terminates_on_failure) {
    reaction.disconnect_reason = profile_.disconnect_reason_bug
                                     ? ErrorCode::kRemoteUserTerminated
                                     : ErrorCode::kAuthenticationFailure;
  }

  if (!context.record && profile_.repair_on_missing_key) {
    reaction.repair = host::RepairMode::kAutomatic;
    return reaction;
  }

  switch (profile_.on_auth_failure) {
    case FailureBehavior::kSilentDeletePairing:
      if (context.record) {
        reaction.delete_key = true;
        reaction.surface.push_back({SurfaceKind::kSilentKeyDeletion, context.peer, {}});
      }
      break;
    case FailureBehavior::kGenericError:
      reaction.surface.push_back(
          {SurfaceKind::kGenericErrorText, context.peer, profile_.error_text});
      break;
    case FailureBehavior::kIndicatorOnly:
      reaction.surface.push_back({SurfaceKind::kTransientIndicator, context.peer, {}});
      break;
    case FailureBehavior::kNoIndication:
    case FailureBehavior::kSpecCompliant:
      break;
  }
  if (!profile_.key_survives_failure && context.record) reaction.delete_key = true;
  return reaction;
}

std::unique_ptr<host::HostPolicy> MakePolicy(const StackProfile& profile) {
  Validate(profile);
  if (profile.on_auth_failure == FailureBehavior::kSpecCompliant) {
    return std::make_unique<ReferenceProfilePolicy>(profile);
  }
  return std::make_unique<ProfilePolicy>(profile);
}

}  // namespace authlab::profiles
