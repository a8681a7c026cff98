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

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authlab/core/address.h"
#include "authlab/core/event_bus.h"
#include "authlab/core/types.h"
#include "authlab/hci/packet.h"

namespace authlab::attack {

enum class TargetCommand : uint8_t { kLinkKeyRequestReply, kLeEnableEncryption };

std::string_view ToString(TargetCommand target);
std::optional<TargetCommand> TargetCommandFromString(std::string_view text);

// Half-open range [begin, end) of scenario step indices.
struct StepWindow {
  static constexpr size_t kOpenEnd = std::numeric_limits<size_t>::max();
  size_t begin = 0;
  size_t end = kOpenEnd;

  bool Contains(size_t step) const { return step >= begin && step < end; }
  bool empty() const { return end <= begin; }
  friend bool operator==(const StepWindow&, const StepWindow&) = default;
};

// Replaces the key in matching host -> controller commands.
struct FaultRule {
  TargetCommand target = TargetCommand::kLinkKeyRequestReply;
  std::optional<DeviceAddress> match_peer;
  LinkKey replacement;
  StepWindow window;
  friend bool operator==(const FaultRule&, const FaultRule&) = default;
};

class FaultRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws FaultRuleError for an empty window.
void Validate(const FaultRule& rule);

struct InjectionContext {
  size_t step = 0;
  // Peer behind a connection handle, for commands that only carry a handle.
  std::function<std::optional<DeviceAddress>(uint16_t)> peer_of_handle;
};

struct InjectionResult {
  hci::Command command;
  std::optional<InjectionAudit> audit;  // set iff the rule matched
};

// Applies a single rule. Only the key field of a matching command changes.
InjectionResult Inject(const FaultRule& rule, size_t rule_index,
                       const hci::Command& command, const InjectionContext& context);

// Ordered rule set for one host/controller boundary; the first matching
// rule wins.
class FaultInjector {
 public:
  void AddRule(FaultRule rule);
  const std::vector<FaultRule>& rules() const { return rules_; }

  InjectionResult Apply(const hci::Command& command, const InjectionContext& context) const;

 private:
  std::vector<FaultRule> rules_;
};

}  // namespace authlab::attack
