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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../unit/test_util.h"
#include "authlab/compliance/matrix.h"
#include "authlab/hci/codec.h"
#include "authlab/host/failure_policy.h"
#include "authlab/linklayer/connection.h"
#include "authlab/scenario/runner.h"
#include "authlab/trace/btsnoop.h"

namespace {

using namespace authlab;
using Clock = std::chrono::steady_clock;

// Collects the first reason a criterion failed.
struct Outcome {
  bool ok = true;
  std::string why;
  void Require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      why = what;
    }
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

const std::vector<std::string> kNonReference = {"google-android", "samsung-android", "ios",
                                                "macos", "gnome-bluez", "windows", "peripheral"};

// Reference decisions written out row by row, independent of the
// implementation's own table.
struct Row {
  KeyType type;
  bool bonded;
  host::FailureAction option1;
  host::FailureAction option2;
  int recommended;  // 1 or 2; 0 when both options coincide
};

Outcome DecisionTable(std::string& detail) {
  using host::FailureAction;
  const FailureAction kNotify = FailureAction::kNotifySecurityFailure;
  const FailureAction kAuto = FailureAction::kAutoRepair;
  const FailureAction kAsk = FailureAction::kAskUserThenRepair;
  const Row rows[] = {
      {KeyType::kCombination, false, kAuto, kAsk, 2},
      {KeyType::kCombination, true, kNotify, kNotify, 0},
      {KeyType::kUnauthenticated, false, kAuto, kAsk, 1},
      {KeyType::kUnauthenticated, true, kNotify, kNotify, 0},
      {KeyType::kAuthenticated, false, kAuto, kAsk, 2},
      {KeyType::kAuthenticated, true, kNotify, kNotify, 0},
  };
  Outcome o;
  auto start = Clock::now();
  size_t cells = 0;
  for (const auto& row : rows) {
    for (int option = 1; option <= 2; ++option) {
      auto policy = option == 1 ? host::OptionPolicy::kOption1 : host::OptionPolicy::kOption2;
      FailureAction expected = option == 1 ? row.option1 : row.option2;
      std::string cell = std::string(ToString(row.type)) + (row.bonded ? "/bonded" : "/non-bonded") +
                         "/option" + std::to_string(option);
      auto decision = host::DecideFailureAction(row.type, row.bonded, policy);
      o.Require(decision.action == expected, cell + ": wrong action");
      if (row.recommended != 0) {
        o.Require(decision.recommended == (row.recommended == option), cell + ": wrong recommendation");
      }

      // The reference host's reaction to a controller-reported failure.
      host::ReferencePolicy reference(policy);
      host::FailureContext ctx;
      ctx.peer = testing::Addr("00:1A:7D:DA:71:13");
      ctx.record = LinkKeyRecord{ctx.peer, LinkKey{}, row.type, row.bonded, Transport::kBtClassic};
      auto reaction = reference.OnFailure(ctx);
      bool warns = false, asks = false;
      for (const auto& s : reaction.surface) {
        warns |= s.kind == SurfaceKind::kSecurityFailureWarning;
        asks |= s.kind == SurfaceKind::kRepairConsentPrompt;
      }
      o.Require(!reaction.delete_key, cell + ": key deleted");
      o.Require(reaction.disconnect_reason == ErrorCode::kAuthenticationFailure,
                cell + ": disconnect reason");
      switch (expected) {
        case host::FailureAction::kNotifySecurityFailure:
          o.Require(warns && reaction.repair == host::RepairMode::kNone, cell + ": no warning");
          break;
        case host::FailureAction::kAutoRepair:
          o.Require(!asks && reaction.repair == host::RepairMode::kAutomatic, cell + ": no auto repair");
          break;
        case host::FailureAction::kAskUserThenRepair:
          o.Require(asks && reaction.repair == host::RepairMode::kAskUser, cell + ": no prompt");
          break;
      }
      ++cells;
    }
  }
  double elapsed = Seconds(start);
  o.Require(elapsed < 1.0, "took too long");
  std::ostringstream d;
  d << cells << " cells, " << elapsed * 1e3 << " ms";
  detail = d.str();
  return o;
}

Outcome HeadlineClaim(std::string& detail) {
  Outcome o;
  auto config = testing::Shipped("matrix/bt-bonded-mismatch.cfg");
  size_t flagged = 0;
  for (const auto& name : kNonReference) {
    auto run = scenario::RunWithProfile(name, config);
    if (run.HasViolation()) ++flagged;
    else o.Require(false, name + " not flagged");
  }
  auto reference = scenario::RunWithProfile("reference", config);
  o.Require(reference.verdict && !reference.HasViolation(), "reference flagged");
  detail = std::to_string(flagged) + "/" + std::to_string(kNonReference.size()) + " profiles flagged";
  return o;
}

Outcome MatrixRow(std::string& detail) {
  const std::map<std::string, std::string> expected = {
      {"macos", "INDICATOR_ONLY"},       {"gnome-bluez", "INDICATOR_ONLY"},
      {"windows", "ERROR_TEXT"},         {"ios", "ERROR_TEXT"},
      {"samsung-android", "ERROR_TEXT"}, {"google-android", "PAIRING_REMOVED"},
      {"peripheral", "NO_INDICATION"},
  };
  Outcome o;
  auto m = scenario::RunMatrix({testing::Shipped("matrix/bt-bonded-mismatch.cfg")}, kNonReference);
  size_t matched = 0;
  for (size_t p = 0; p < m.profiles.size(); ++p) {
    std::string got = compliance::CellText(m.At(0, p));
    if (got == expected.at(m.profiles[p])) ++matched;
    else o.Require(false, m.profiles[p] + " shows " + got);
  }
  detail = std::to_string(matched) + "/" + std::to_string(expected.size()) + " cells match";
  return o;
}

std::optional<ErrorCode> ResponderReason(const char* file) {
  auto run = scenario::Execute(testing::Shipped(file));
  auto bytes = trace::WriteTrace(run.result.captures.at("laptop"));
  for (const auto& p : trace::ReadTrace(bytes)) {
    if (p.direction != trace::Direction::kReceived) continue;
    const auto* ev = std::get_if<hci::Event>(&p.packet);
    if (!ev) continue;
    if (const auto* d = std::get_if<hci::DisconnectionComplete>(ev)) return d->reason;
  }
  return std::nullopt;
}

Outcome ReasonPropagation(std::string& detail) {
  Outcome o;
  auto buggy = ResponderReason("reason-propagation/samsung-android.cfg");
  auto reference = ResponderReason("reason-propagation/reference.cfg");
  o.Require(buggy == ErrorCode::kRemoteUserTerminated, "buggy profile reason");
  o.Require(reference == ErrorCode::kAuthenticationFailure, "reference reason");
  auto hex = [](std::optional<ErrorCode> c) {
    if (!c) return std::string("none");
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", static_cast<unsigned>(*c));
    return std::string(buf);
  };
  detail = "responder reason " + hex(buggy) + " (samsung-android) vs " + hex(reference) +
           " (reference)";
  return o;
}

Outcome KeyToggle(std::string& detail) {
  Outcome o;
  auto config = testing::Shipped("key-toggle.cfg");
  const auto registry = profiles::BuiltinProfiles();
  size_t checked = 0;
  for (const auto& p : registry.profiles()) {
    if (p.name == "peripheral") continue;  // the DUT here initiates as a host
    auto run = scenario::RunWithProfile(p, config);
    const auto& links = run.result.links;
    o.Require(links.size() == 2, p.name + ": expected two links");
    if (links.size() != 2) continue;
    o.Require(!links[0].reached_encryption, p.name + ": wrong key still encrypted");
    bool negative = false;
    for (const auto& t : run.result.dut_trace()) {
      const auto* cmd = std::get_if<hci::Command>(&t.packet);
      negative |= cmd && std::holds_alternative<hci::LinkKeyRequestNegativeReply>(*cmd);
    }
    bool automatic_pairing = false;
    for (const auto& e : run.result.events) {
      const auto* pi = std::get_if<PairingInitiated>(&e.payload);
      automatic_pairing |= pi && pi->trigger == PairingTrigger::kAutomatic;
    }
    if (p.key_survives_failure) {
      o.Require(links[1].reached_encryption, p.name + ": reconnect failed");
    } else {
      o.Require(!links[1].reached_encryption && negative && automatic_pairing,
                p.name + ": expected negative reply and new pairing");
    }
    ++checked;
  }
  detail = std::to_string(checked) + " profiles";
  return o;
}

Outcome ForcedRepairing(std::string& detail) {
  Outcome o;
  auto run = scenario::Execute(testing::Shipped("attacks/forced-repairing.cfg"));
  const auto& r = run.result;
  auto held = [&](const std::string& victim) {
    const auto& store = r.stores_after.at(victim);
    if (store.size() != 1) return false;
    for (const auto& m : r.mitm_store) {
      if (m.key == store[0].key && m.transport == store[0].transport) return true;
    }
    return false;
  };
  o.Require(r.dut_profile == "google-android", "wrong DUT profile");
  o.Require(held("phone") && held("headset"), "attacker lacks a victim key");
  o.Require(!r.links.empty() && r.links.back().route == attack::Route::kRelay &&
                r.links.back().reached_encryption,
            "relay not established");
  o.Require(r.consents_executed == 0, "consent steps executed");
  using compliance::CheckResult;
  o.Require(run.verdict.has_value(), "no verdict");
  if (run.verdict) {
    const auto& v = *run.verdict;
    o.Require(v.Find("C1")->result == CheckResult::kViolation, "C1 not cited");
    o.Require(v.Find("C3")->result == CheckResult::kViolation, "C3 not cited");
    o.Require(v.Find("C5")->result != CheckResult::kPass, "C5 not cited");
  }
  detail = std::to_string(r.mitm_store.size()) + " attacker keys, " +
           std::to_string(r.consents_executed) + " consents";
  return o;
}

Outcome MismatchNeverEncrypts(std::string& detail) {
  Outcome o;
  testing::PacketGen gen(0x5EC0);
  ScenarioRng rng(0x5EC1);
  const DeviceAddress a = testing::Addr("3C:28:6D:11:22:33");
  const DeviceAddress b = testing::Addr("00:1A:7D:DA:71:13");
  auto start = Clock::now();
  size_t unequal = 0, equal = 0, bad = 0;
  for (int i = 0; i < 10000; ++i) {
    LinkKey k1 = gen.AnyKey(), k2 = gen.AnyKey();
    if (k1 == k2) k2 = LinkKey{};
    for (Transport t : {Transport::kBtClassic, Transport::kBle}) {
      linklayer::Connection mismatch(1, a, b, t), match(2, a, b, t);
      if (t == Transport::kBtClassic) {
        linklayer::LinkOps::RunBtAuthentication(mismatch, k1, k2, rng);
        linklayer::LinkOps::RunBtAuthentication(match, k1, k1, rng);
      } else {
        linklayer::LinkOps::RunBleEncryptionStart(mismatch, k1, k2, rng);
        linklayer::LinkOps::RunBleEncryptionStart(match, k1, k1, rng);
      }
      bad += mismatch.state() == linklayer::LinkState::kEncrypted;
      bad += match.state() != linklayer::LinkState::kEncrypted;
    }
    ++unequal;
    ++equal;
  }
  double elapsed = Seconds(start);
  o.Require(bad == 0, std::to_string(bad) + " wrong outcomes");
  o.Require(elapsed < 10.0, "took too long");
  std::ostringstream d;
  d << unequal << " unequal + " << equal << " equal pairs per transport, " << elapsed << " s";
  detail = d.str();
  return o;
}

std::vector<uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string Listing(std::span<const uint8_t> bytes) {
  std::string out;
  for (const auto& p : trace::ReadTrace(bytes)) {
    out += std::to_string(p.timestamp) + (p.direction == trace::Direction::kSent ? " > " : " < ") +
           hci::Describe(p.packet) + "\n";
  }
  return out;
}

Outcome TraceFidelity(std::string& detail) {
  Outcome o;
  testing::PacketGen gen(0xB75);
  size_t corpora = 0;
  for (int c = 0; c < 200; ++c) {
    std::vector<trace::TracePacket> packets;
    SimTime t = 0;
    size_t n = gen.Below(40);
    for (size_t i = 0; i < n; ++i) {
      t += gen.Below(1'000'000);
      packets.push_back({t, gen.Below(2) ? trace::Direction::kSent : trace::Direction::kReceived,
                         gen.Packet()});
    }
    auto bytes = trace::WriteTrace(packets);
    o.Require(trace::ReadTrace(bytes) == packets, "round trip differs");
    o.Require(trace::WriteTrace(trace::ReadTrace(bytes)) == bytes, "re-encoding differs");
    ++corpora;
  }

  const std::string golden_dir = AUTHLAB_TEST_DATA_DIR;
  auto golden = ReadFile(golden_dir + "/bonded-mismatch-reference.btsnoop");
  auto expected = ReadFile(golden_dir + "/bonded-mismatch-reference.txt");
  std::string expected_text(expected.begin(), expected.end());
  o.Require(!golden.empty(), "golden trace missing");
  for (int i = 0; i < 3; ++i) o.Require(Listing(golden) == expected_text, "golden decode differs");

  auto config = testing::Shipped("bonded-mismatch/reference.cfg");
  auto first = trace::WriteTrace(scenario::Execute(config).result.dut_trace());
  auto second = trace::WriteTrace(scenario::Execute(config).result.dut_trace());
  o.Require(first == second, "same seed gave different bytes");
  o.Require(first == golden, "regenerated trace differs from golden");
  detail = std::to_string(corpora) + " corpora, golden " + std::to_string(golden.size()) + " bytes";
  return o;
}

Outcome CodecRoundTrip(std::string& detail) {
  Outcome o;
  testing::PacketGen gen(0xC0DEC);
  size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    hci::Packet p = gen.Packet();
    auto bytes = hci::Encode(p);
    if (hci::Decode(bytes) != p) ++failures;
  }
  o.Require(failures == 0, std::to_string(failures) + " failures");
  detail = "10000 cases, " + std::to_string(failures) + " failures";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome(std::string&)> run;
  };
  const Criterion criteria[] = {
      {"decision table", DecisionTable},
      {"every non-reference stack flagged", HeadlineClaim},
      {"matrix summary row", MatrixRow},
      {"disconnect reason propagation", ReasonPropagation},
      {"key toggle", KeyToggle},
      {"forced re-pairing", ForcedRepairing},
      {"mismatched keys never encrypt", MismatchNeverEncrypts},
      {"trace fidelity", TraceFidelity},
      {"codec round trip", CodecRoundTrip},
  };
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    std::string detail;
    Outcome o;
    try {
      o = c.run(detail);
    } catch (const std::exception& e) {
      o.ok = false;
      o.why = std::string("exception: ") + e.what();
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << c.name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    if (!o.ok) std::cout << " - " << o.why;
    std::cout << "\n";
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
