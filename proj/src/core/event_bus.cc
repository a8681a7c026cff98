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

#include "authlab/core/event_bus.h"

namespace authlab {

std::string_view ToString(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::kSecurityFailureWarning:
      return "SECURITY_FAILURE_WARNING";
    case SurfaceKind::kRepairConsentPrompt:
      return "REPAIR_CONSENT_PROMPT";
    case SurfaceKind::kGenericErrorText:
      return "GENERIC_ERROR_TEXT";
    case SurfaceKind::kTransientIndicator:
      return "TRANSIENT_INDICATOR";
    case SurfaceKind::kSilentKeyDeletion:
      return "SILENT_KEY_DELETION";
    case SurfaceKind::kNone:
      return "NONE";
  }
  return "?";
}

std::string_view ToString(PairingTrigger trigger) {
  switch (trigger) {
    case PairingTrigger::kAutomatic:
      return "AUTOMATIC";
    case PairingTrigger::kUserConsent:
      return "USER_CONSENT";
    case PairingTrigger::kScripted:
      return "SCRIPTED";
  }
  return "?";
}

size_t EventBus::Publish(SimTime timestamp, const DeviceAddress& device,
                         BusPayload payload) {
  events_.push_back(BusEvent{timestamp, device, std::move(payload)});
  return events_.size() - 1;
}

}  // namespace authlab
