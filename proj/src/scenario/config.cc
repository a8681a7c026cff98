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

#include "authlab/scenario/config.h"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace authlab::scenario {
namespace {

struct Line {
  size_t number = 0;
  std::vector<std::string> tokens;
};

std::string LineLocation(size_t number) { return "line " + std::to_string(number); }

// Whitespace-separated tokens; double quotes group, backslash escapes
// inside quotes, '#' starts a comment outside quotes.
std::vector<std::string> Tokenize(std::string_view text, size_t number) {
  std::vector<std::string> tokens;
  std::string current;
  bool in_token = false;
  bool quoted = false;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '\\' && i + 1 < text.size()) {
        current += text[++i];
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
      continue;
    }
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      if (in_token) tokens.push_back(std::move(current));
      current.clear();
      in_token = false;
      continue;
    }
    in_token = true;
    if (c == '"') {
      quoted = true;
    } else {
      current += c;
    }
  }
  if (quoted) throw ConfigError(LineLocation(number), "unterminated quote");
  if (in_token) tokens.push_back(std::move(current));
  return tokens;
}

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class LineParser {
 public:
  explicit LineParser(const Line& line) : line_(line) {}

  [[noreturn]] void Fail(const std::string& message) const {
    throw ConfigError(LineLocation(line_.number), message);
  }

  const std::string& Positional(size_t index, std::string_view what) const {
    if (index >= line_.tokens.size() || line_.tokens[index].find('=') != std::string::npos) {
      Fail("expected " + std::string(what));
    }
    return line_.tokens[index];
  }

  // key=value options from `first` on. Unknown keys are rejected.
  std::map<std::string, std::string> Options(size_t first,
                                             const std::set<std::string>& allowed) const {
    std::map<std::string, std::string> options;
    for (size_t i = first; i < line_.tokens.size(); ++i) {
      const auto& token = line_.tokens[i];
      auto eq = token.find('=');
      if (eq == std::string::npos) Fail("unexpected argument '" + token + "'");
      std::string key = token.substr(0, eq);
      if (!allowed.contains(key)) Fail("unknown option '" + key + "'");
      if (options.contains(key)) Fail("option '" + key + "' given twice");
      options[key] = token.substr(eq + 1);
    }
    return options;
  }

  void ExpectCount(size_t count) const {
    if (line_.tokens.size() != count) {
      Fail("'" + line_.tokens[0] + "' takes " + std::to_string(count - 1) + " argument(s)");
    }
  }

  bool Bool(const std::string& text, std::string_view field) const {
    if (text == "true") return true;
    if (text == "false") return false;
    Fail(std::string(field) + ": expected true or false, got '" + text + "'");
  }

  LinkKey Key(const std::string& text, std::string_view field) const {
    auto key = LinkKey::FromHex(text);
    if (!key) Fail(std::string(field) + ": expected 32 hex digits");
    return *key;
  }

  DeviceAddress Address(const std::string& text) const {
    auto address = DeviceAddress::FromString(text);
    if (!address) Fail("bad device address '" + text + "'");
    return *address;
  }

  size_t Size(std::string_view text, std::string_view field) const {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(std::string(field) + ": expected a non-negative integer");
    }
    return value;
  }

  const std::vector<std::string>& tokens() const { return line_.tokens; }

 private:
  const Line& line_;
};

attack::StepWindow ParseWindow(const LineParser& p, const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) p.Fail("window: expected <begin>..<end> or <begin>..");
  attack::StepWindow window;
  window.begin = p.Size(std::string_view(text).substr(0, dots), "window begin");
  auto rest = std::string_view(text).substr(dots + 2);
  if (!rest.empty()) window.end = p.Size(rest, "window end");
  if (window.empty()) p.Fail("window: empty step range");
  return window;
}

std::string FormatWindow(const attack::StepWindow& window) {
  std::string out = std::to_string(window.begin) + "..";
  if (window.end != attack::StepWindow::kOpenEnd) out += std::to_string(window.end);
  return out;
}

void ParseDevice(const LineParser& p, ScenarioConfig& config) {
  DeviceConfig device;
  device.name = p.Positional(1, "device name");
  device.address = p.Address(p.Positional(2, "device address"));
  const auto& role = p.Positional(3, "device role (host, peripheral, mitm)");
  size_t options_from = 4;
  if (role == "host") {
    device.role = DeviceRole::kHost;
    device.profile = p.Positional(4, "host profile name");
    options_from = 5;
  } else if (role == "peripheral") {
    device.role = DeviceRole::kPeripheral;
  } else if (role == "mitm") {
    device.role = DeviceRole::kMitm;
  } else {
    p.Fail("unknown device role '" + role + "'");
  }
  auto options = p.Options(options_from, {"option", "profile"});
  if (options.contains("option")) {
    device.option = host::OptionPolicyFromString(options["option"]);
    if (!device.option) p.Fail("option: expected recommended, option1 or option2");
  }
  if (options.contains("profile")) {
    if (device.role != DeviceRole::kPeripheral) p.Fail("profile= only applies to peripherals");
    device.profile = options["profile"];
  }
  config.devices.push_back(std::move(device));
}

void ParseProfile(const LineParser& p, ScenarioConfig& config) {
  profiles::StackProfile profile;
  profile.name = p.Positional(1, "profile name");
  auto options = p.Options(2, {"behavior", "text", "reason_bug", "key_survives", "ble",
                               "repair_on_missing_key", "terminates", "option"});
  if (!options.contains("behavior")) p.Fail("profile needs behavior=");
  auto behavior = profiles::FailureBehaviorFromString(options["behavior"]);
  if (!behavior) p.Fail("unknown behavior '" + options["behavior"] + "'");
  profile.on_auth_failure = *behavior;
  if (options.contains("text")) profile.error_text = options["text"];
  if (options.contains("reason_bug")) profile.disconnect_reason_bug = p.Bool(options["reason_bug"], "reason_bug");
  if (options.contains("key_survives")) profile.key_survives_failure = p.Bool(options["key_survives"], "key_survives");
  if (options.contains("ble")) profile.supports_ble = p.Bool(options["ble"], "ble");
  if (options.contains("repair_on_missing_key")) {
    profile.repair_on_missing_key = p.Bool(options["repair_on_missing_key"], "repair_on_missing_key");
  }
  if (options.contains("terminates")) profile.terminates_on_failure = p.Bool(options["terminates"], "terminates");
  if (options.contains("option")) {
    auto option = host::OptionPolicyFromString(options["option"]);
    if (!option) p.Fail("option: expected recommended, option1 or option2");
    profile.option = *option;
  }
  try {
    profiles::Validate(profile);
  } catch (const profiles::ProfileError& e) {
    p.Fail(e.what());
  }
  config.profiles.push_back(std::move(profile));
}

void ParsePairing(const LineParser& p, ScenarioConfig& config) {
  PairingConfig pairing;
  pairing.a = p.Positional(1, "first device");
  pairing.b = p.Positional(2, "second device");
  auto options = p.Options(3, {"type", "bonded", "transport", "via_mitm", "key", "key_b"});
  if (options.contains("type")) {
    auto type = KeyTypeFromString(options["type"]);
    if (!type) p.Fail("type: expected COMBINATION, UNAUTHENTICATED or AUTHENTICATED");
    pairing.key_type = *type;
  }
  if (options.contains("bonded")) pairing.bonded = p.Bool(options["bonded"], "bonded");
  if (options.contains("transport")) {
    auto transport = TransportFromString(options["transport"]);
    if (!transport) p.Fail("transport: expected BT or BLE");
    pairing.transport = *transport;
  }
  if (options.contains("via_mitm")) pairing.via_mitm = p.Bool(options["via_mitm"], "via_mitm");
  if (options.contains("key")) pairing.key = p.Key(options["key"], "key");
  if (options.contains("key_b")) pairing.key_b = p.Key(options["key_b"], "key_b");
  config.pairings.push_back(std::move(pairing));
}

void ParseStep(const LineParser& p, ScenarioConfig& config) {
  const auto& kind = p.Positional(1, "step kind");
  Step step;
  if (kind == "connect") {
    step.kind = StepKind::kConnect;
    step.device = p.Positional(2, "initiator");
    step.peer = p.Positional(3, "responder");
    auto options = p.Options(4, {"transport"});
    if (options.contains("transport")) {
      step.transport = TransportFromString(options["transport"]);
      if (!step.transport) p.Fail("transport: expected BT or BLE");
    }
  } else if (kind == "reconnect") {
    step.kind = StepKind::kReconnect;
    p.ExpectCount(2);
  } else if (kind == "inject_fault") {
    step.kind = StepKind::kInjectFault;
    step.device = p.Positional(2, "device");
    auto options = p.Options(3, {"command", "key", "peer", "window"});
    if (!options.contains("command")) p.Fail("inject_fault needs command=");
    auto target = attack::TargetCommandFromString(options["command"]);
    if (!target) p.Fail("command: expected LINK_KEY_REQUEST_REPLY or LE_ENABLE_ENCRYPTION");
    step.fault.target = *target;
    if (!options.contains("key")) p.Fail("inject_fault needs key=");
    step.fault.key = p.Key(options["key"], "key");
    if (options.contains("peer")) step.fault.peer = options["peer"];
    if (options.contains("window")) step.fault.window = ParseWindow(p, options["window"]);
  } else if (kind == "mitm_present") {
    step.kind = StepKind::kMitmPresent;
    p.ExpectCount(3);
    step.flag = p.Bool(p.tokens()[2], "mitm_present");
  } else if (kind == "user_reset") {
    step.kind = StepKind::kUserReset;
    p.ExpectCount(4);
    step.device = p.tokens()[2];
    step.peer = p.tokens()[3];
  } else if (kind == "user_consent") {
    step.kind = StepKind::kUserConsent;
    p.ExpectCount(3);
    const auto& answer = p.tokens()[2];
    if (answer != "accept" && answer != "reject") p.Fail("user_consent: expected accept or reject");
    step.flag = answer == "accept";
  } else {
    p.Fail("unknown step '" + kind + "'");
  }
  config.script.push_back(std::move(step));
}

void ParseLine(const Line& line, ScenarioConfig& config, std::set<std::string>& seen) {
  LineParser p(line);
  const auto& keyword = line.tokens[0];
  auto once = [&](const std::string& what) {
    if (!seen.insert(what).second) p.Fail("'" + what + "' given twice");
  };
  if (keyword == "scenario") {
    once("scenario");
    p.ExpectCount(2);
    config.id = line.tokens[1];
  } else if (keyword == "seed") {
    once("seed");
    p.ExpectCount(2);
    uint64_t seed = 0;
    const auto& text = line.tokens[1];
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size()) p.Fail("seed: expected a 64-bit unsigned integer");
    config.seed = seed;
  } else if (keyword == "dut") {
    once("dut");
    p.ExpectCount(2);
    config.dut = line.tokens[1];
  } else if (keyword == "device") {
    ParseDevice(p, config);
  } else if (keyword == "profile") {
    ParseProfile(p, config);
  } else if (keyword == "pair") {
    ParsePairing(p, config);
  } else if (keyword == "step") {
    ParseStep(p, config);
  } else if (keyword == "output") {
    p.ExpectCount(3);
    const auto& what = line.tokens[1];
    if (what == "trace") {
      once("output trace");
      config.trace_out = line.tokens[2];
    } else if (what == "report") {
      once("output report");
      config.report_out = line.tokens[2];
    } else {
      p.Fail("output: expected trace or report");
    }
  } else {
    p.Fail("unknown keyword '" + keyword + "'");
  }
}

std::string Bool(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string_view ToString(DeviceRole role) {
  switch (role) {
    case DeviceRole::kHost:
      return "host";
    case DeviceRole::kPeripheral:
      return "peripheral";
    case DeviceRole::kMitm:
      return "mitm";
  }
  return "?";
}

std::string_view ToString(StepKind kind) {
  switch (kind) {
    case StepKind::kConnect:
      return "connect";
    case StepKind::kReconnect:
      return "reconnect";
    case StepKind::kInjectFault:
      return "inject_fault";
    case StepKind::kMitmPresent:
      return "mitm_present";
    case StepKind::kUserReset:
      return "user_reset";
    case StepKind::kUserConsent:
      return "user_consent";
  }
  return "?";
}

std::string EffectiveProfile(const DeviceConfig& device) {
  if (device.role == DeviceRole::kPeripheral && device.profile.empty()) return "peripheral";
  return device.profile;
}

const DeviceConfig* ScenarioConfig::FindDevice(std::string_view name) const {
  for (const auto& d : devices) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const PairingConfig* ScenarioConfig::FindPairing(std::string_view a, std::string_view b) const {
  for (const auto& p : pairings) {
    if ((p.a == a && p.b == b) || (p.a == b && p.b == a)) return &p;
  }
  return nullptr;
}

void Validate(const ScenarioConfig& config, const std::vector<std::string>& known_profiles) {
  if (config.id.empty()) throw ConfigError("scenario", "scenario id is required");
  if (!config.seed) throw ConfigError("seed", "seed is required");

  std::set<std::string> profile_names(known_profiles.begin(), known_profiles.end());
  std::set<std::string> local_names;
  for (size_t i = 0; i < config.profiles.size(); ++i) {
    const auto& profile = config.profiles[i];
    std::string where = "profiles[" + std::to_string(i) + "]";
    if (!local_names.insert(profile.name).second) {
      throw ConfigError(where + ".name", "duplicate profile '" + profile.name + "'");
    }
    try {
      profiles::Validate(profile);
    } catch (const profiles::ProfileError& e) {
      throw ConfigError(where, e.what());
    }
    profile_names.insert(profile.name);
  }

  std::set<std::string> names;
  std::set<DeviceAddress> addresses;
  size_t mitm_count = 0;
  for (size_t i = 0; i < config.devices.size(); ++i) {
    const auto& d = config.devices[i];
    std::string where = "devices[" + std::to_string(i) + "]";
    if (!names.insert(d.name).second) throw ConfigError(where + ".name", "duplicate device '" + d.name + "'");
    if (!addresses.insert(d.address).second) {
      throw ConfigError(where + ".address", "duplicate address " + d.address.ToString());
    }
    if (d.role == DeviceRole::kMitm) ++mitm_count;
    if (d.role != DeviceRole::kMitm && !profile_names.contains(EffectiveProfile(d))) {
      throw ConfigError(where + ".profile", "unknown profile '" + EffectiveProfile(d) + "'");
    }
  }
  if (mitm_count > 1) throw ConfigError("devices", "at most one mitm device is supported");

  auto host_device = [&](const std::string& name, const std::string& where) {
    const auto* d = config.FindDevice(name);
    if (d == nullptr) throw ConfigError(where, "undeclared device '" + name + "'");
    if (d->role == DeviceRole::kMitm) throw ConfigError(where, "'" + name + "' is the mitm");
    return d;
  };

  if (config.dut.empty()) throw ConfigError("dut", "dut is required");
  host_device(config.dut, "dut");

  std::set<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i < config.pairings.size(); ++i) {
    const auto& p = config.pairings[i];
    std::string where = "pairings[" + std::to_string(i) + "]";
    host_device(p.a, where + ".a");
    host_device(p.b, where + ".b");
    if (p.a == p.b) throw ConfigError(where, "a device cannot pair with itself");
    auto key = std::minmax(p.a, p.b);
    if (!pairs.insert({key.first, key.second}).second) {
      throw ConfigError(where, "duplicate pairing " + p.a + " / " + p.b);
    }
    if (p.via_mitm && mitm_count == 0) {
      throw ConfigError(where + ".via_mitm", "pairing via mitm requires a mitm device");
    }
    if (!p.via_mitm && p.key_b) throw ConfigError(where + ".key_b", "key_b only applies to via_mitm pairings");
    if (p.via_mitm && p.key && p.key_b && *p.key == *p.key_b) {
      throw ConfigError(where + ".key_b", "mitm keys with both victims must differ");
    }
  }

  bool connected = false;
  for (size_t i = 0; i < config.script.size(); ++i) {
    const auto& s = config.script[i];
    std::string where = "script[" + std::to_string(i) + "]";
    switch (s.kind) {
      case StepKind::kConnect:
        host_device(s.device, where + ".initiator");
        host_device(s.peer, where + ".responder");
        if (s.device == s.peer) throw ConfigError(where, "cannot connect a device to itself");
        if (!s.transport && config.FindPairing(s.device, s.peer) == nullptr) {
          throw ConfigError(where + ".transport", "no pairing between '" + s.device + "' and '" +
                                                      s.peer + "'; give transport=");
        }
        connected = true;
        break;
      case StepKind::kReconnect:
        if (!connected) throw ConfigError(where, "reconnect before any connect");
        break;
      case StepKind::kInjectFault:
        host_device(s.device, where + ".device");
        if (s.fault.peer) host_device(*s.fault.peer, where + ".peer");
        if (s.fault.window && s.fault.window->empty()) throw ConfigError(where + ".window", "empty window");
        break;
      case StepKind::kMitmPresent:
        if (mitm_count == 0) throw ConfigError(where, "mitm_present requires a mitm device");
        break;
      case StepKind::kUserReset:
        host_device(s.device, where + ".device");
        host_device(s.peer, where + ".peer");
        break;
      case StepKind::kUserConsent:
        break;
    }
  }
}

ScenarioConfig ParseConfig(std::string_view text) {
  ScenarioConfig config;
  std::set<std::string> seen;
  size_t number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    Line line{number, Tokenize(text.substr(start, end - start), number)};
    if (!line.tokens.empty()) ParseLine(line, config, seen);
    start = end + 1;
  }
  Validate(config, profiles::BuiltinProfiles().Names());
  return config;
}

ScenarioConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open scenario file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeProfile(const profiles::StackProfile& p) {
  std::ostringstream out;
  out << "profile " << p.name << " behavior=" << profiles::ToString(p.on_auth_failure);
  if (!p.error_text.empty()) out << " text=" << Quote(p.error_text);
  out << " reason_bug=" << Bool(p.disconnect_reason_bug) << " key_survives="
      << Bool(p.key_survives_failure) << " ble=" << Bool(p.supports_ble)
      << " repair_on_missing_key=" << Bool(p.repair_on_missing_key)
      << " terminates=" << Bool(p.terminates_on_failure)
      << " option=" << host::ToString(p.option);
  return out.str();
}

std::string SerializeConfig(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "scenario " << config.id << "\n";
  if (config.seed) out << "seed " << *config.seed << "\n";
  out << "dut " << config.dut << "\n";
  for (const auto& p : config.profiles) out << SerializeProfile(p) << "\n";
  for (const auto& d : config.devices) {
    out << "device " << d.name << " " << d.address.ToString() << " " << ToString(d.role);
    if (d.role == DeviceRole::kHost) out << " " << d.profile;
    if (d.role == DeviceRole::kPeripheral && !d.profile.empty()) out << " profile=" << d.profile;
    if (d.option) out << " option=" << host::ToString(*d.option);
    out << "\n";
  }
  for (const auto& p : config.pairings) {
    out << "pair " << p.a << " " << p.b << " type=" << ToString(p.key_type)
        << " bonded=" << Bool(p.bonded) << " transport=" << ToString(p.transport)
        << " via_mitm=" << Bool(p.via_mitm);
    if (p.key) out << " key=" << p.key->ToHex();
    if (p.key_b) out << " key_b=" << p.key_b->ToHex();
    out << "\n";
  }
  for (const auto& s : config.script) {
    out << "step " << ToString(s.kind);
    switch (s.kind) {
      case StepKind::kConnect:
        out << " " << s.device << " " << s.peer;
        if (s.transport) out << " transport=" << ToString(*s.transport);
        break;
      case StepKind::kReconnect:
        break;
      case StepKind::kInjectFault:
        out << " " << s.device << " command=" << attack::ToString(s.fault.target)
            << " key=" << s.fault.key.ToHex();
        if (s.fault.peer) out << " peer=" << *s.fault.peer;
        if (s.fault.window) out << " window=" << FormatWindow(*s.fault.window);
        break;
      case StepKind::kMitmPresent:
        out << " " << Bool(s.flag);
        break;
      case StepKind::kUserReset:
        out << " " << s.device << " " << s.peer;
        break;
      case StepKind::kUserConsent:
        out << " " << (s.flag ? "accept" : "reject");
        break;
    }
    out << "\n";
  }
  if (!config.trace_out.empty()) out << "output trace " << Quote(config.trace_out) << "\n";
  if (!config.report_out.empty()) out << "output report " << Quote(config.report_out) << "\n";
  return out.str();
}

}  // namespace authlab::scenario
