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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authlab/core/types.h"
#include "authlab/host/failure_policy.h"

namespace authlab::profiles {

enum class FailureBehavior : uint8_t {
  kSilentDeletePairing,
  kGenericError,
  kIndicatorOnly,
  kNoIndication,
  // Delegates to host::ReferencePolicy.
  kSpecCompliant,
};

std::string_view ToString(FailureBehavior behavior);
std::optional<FailureBehavior> FailureBehaviorFromString(std::string_view text);

// Observed reaction of a host stack to a wrong key.
struct StackProfile {
  std::string name;
  FailureBehavior on_auth_failure = FailureBehavior::kNoIndication;
  // Shown with kGenericError.
  std::string error_text;
  // DISCONNECT carries REMOTE_USER_TERMINATED instead of AUTHENTICATION_FAILURE.
  bool disconnect_reason_bug = false;
  bool key_survives_failure = true;
  bool supports_ble = true;
  // Starts a fresh pairing, without asking, when its own key is missing.
  bool repair_on_missing_key = false;
  bool terminates_on_failure = true;
  // Only read by kSpecCompliant.
  host::OptionPolicy option = host::OptionPolicy::kRecommended;

  friend bool operator==(const StackProfile&, const StackProfile&) = default;
};

class ProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws ProfileError when the profile breaks an invariant.
void Validate(const StackProfile& profile);

class ProfileRegistry {
 public:
  // Throws ProfileError on duplicate names or invalid profiles.
  void Add(StackProfile profile);
  // Replaces a profile of the same name, or adds it.
  void Upsert(StackProfile profile);

  const StackProfile* Find(std::string_view name) const;
  // Throws ProfileError("unknown profile ...").
  const StackProfile& Get(std::string_view name) const;

  const std::vector<StackProfile>& profiles() const { return profiles_; }
  std::vector<std::string> Names() const;

 private:
  std::vector<StackProfile> profiles_;
};

inline constexpr std::string_view kReferenceProfile = "reference";

// Registry order: google-android, samsung-android, ios, macos, gnome-bluez,
// windows, peripheral, reference.
ProfileRegistry BuiltinProfiles();

// Host policy emulating the profile.
class ProfilePolicy final : public host::HostPolicy {
 public:
  explicit ProfilePolicy(StackProfile profile) : profile_(std::move(profile)) {}

  std::string name() const override { return profile_.name; }
  host::FailureReaction OnFailure(const host::FailureContext& context) const override;
  bool SupportsTransport(Transport transport) const override {
    return transport != Transport::kBle || profile_.supports_ble;
  }
  const StackProfile& profile() const { return profile_; }

 private:
  StackProfile profile_;
};

std::unique_ptr<host::HostPolicy> MakePolicy(const StackProfile& profile);

}  // namespace authlab::profiles
