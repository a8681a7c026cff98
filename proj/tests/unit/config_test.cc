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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "authlab/profiles/stack_profile.h"
#include "authlab/scenario/config.h"
#include "authlab/scenario/runner.h"
#include "test_util.h"

namespace authlab::scenario {
namespace {

constexpr const char* kMinimal = R"(# comment
scenario demo
seed 1
dut phone
device phone 3C:28:6D:11:22:33 host reference
device headset 00:1A:7D:DA:71:13 peripheral
pair phone headset type=AUTHENTICATED bonded=true transport=BT via_mitm=false key=6f2d1c3a9b8e7f60514233241506f7e8
step inject_fault phone command=LINK_KEY_REQUEST_REPLY key=00112233445566778899aabbccddeeff peer=headset window=1..3
step connect phone headset
step reconnect
)";

std::string Replace(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

std::string LocationOf(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.location();
  }
  return "<no error>";
}

TEST(ParseConfig, ReadsEveryField) {
  auto c = ParseConfig(kMinimal);
  EXPECT_EQ(c.id, "demo");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.dut, "phone");
  ASSERT_EQ(c.devices.size(), 2u);
  EXPECT_EQ(c.devices[1].role, DeviceRole::kPeripheral);
  EXPECT_EQ(EffectiveProfile(c.devices[1]), "peripheral");
  ASSERT_EQ(c.pairings.size(), 1u);
  EXPECT_EQ(c.pairings[0].key, testing::Key("6f2d1c3a9b8e7f60514233241506f7e8"));
  ASSERT_EQ(c.script.size(), 3u);
  EXPECT_EQ(c.script[0].kind, StepKind::kInjectFault);
  EXPECT_EQ(c.script[0].fault.window, (attack::StepWindow{1, 3}));
  EXPECT_EQ(c.script[0].fault.peer, "headset");
  EXPECT_EQ(c.script[2].kind, StepKind::kReconnect);
}

TEST(ParseConfig, SyntaxErrorsCarryLineNumber) {
  EXPECT_EQ(LocationOf(Replace(kMinimal, "seed 1", "seed one")), "line 3");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "step reconnect", "step teleport")), "line 10");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "3C:28:6D:11:22:33", "3C:28:6D:11:22")), "line 5");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "key=6f2d", "key=zz2d")), "line 7");
}

TEST(ParseConfig, SemanticErrorsCarryFieldPath) {
  EXPECT_EQ(LocationOf(Replace(kMinimal, "step connect phone headset", "step connect phone speaker")),
            "script[1].responder");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "seed 1\n", "")), "seed");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "via_mitm=false", "via_mitm=true")),
            "pairings[0].via_mitm");
  EXPECT_EQ(LocationOf(Replace(kMinimal, "host reference", "host nokia")), "devices[0].profile");
  // Empty windows are already refused by the parser.
  EXPECT_EQ(LocationOf(Replace(kMinimal, "window=1..3", "window=2..2")), "line 8");
}

TEST(ParseConfig, UndeclaredDeviceMessage) {
  try {
    ParseConfig(Replace(kMinimal, "step connect phone headset", "step connect phone speaker"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("speaker"), std::string::npos);
  }
}

TEST(ParseConfig, RoundTripsThroughSerialize) {
  auto first = ParseConfig(kMinimal);
  auto second = ParseConfig(SerializeConfig(first));
  EXPECT_EQ(first, second);
  EXPECT_EQ(SerializeConfig(first), SerializeConfig(second));
}

TEST(ParseConfig, EveryShippedScenarioRoundTrips) {
  namespace fs = std::filesystem;
  size_t count = 0;
  for (const auto& entry : fs::recursive_directory_iterator(AUTHLAB_SCENARIO_DIR)) {
    if (entry.path().extension() != ".cfg") continue;
    auto c = LoadConfig(entry.path().string());
    EXPECT_EQ(ParseConfig(SerializeConfig(c)), c) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 10u);
}

TEST(ParseConfig, LocalProfileIsUsable) {
  std::string text = kMinimal;
  text = Replace(text, "host reference", "host mine");
  text += SerializeProfile(*profiles::BuiltinProfiles().Find("samsung-android"))
              .replace(0, std::string("profile samsung-android").size(), "profile mine") +
          "\n";
  auto c = ParseConfig(text);
  ASSERT_EQ(c.profiles.size(), 1u);
  EXPECT_EQ(c.profiles[0].name, "mine");
  EXPECT_EQ(ParseConfig(SerializeConfig(c)), c);
}

TEST(RunScenarioFile, ConfigErrorsExitTwo) {
  auto dir = std::filesystem::temp_directory_path() / "authlab_config_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "broken.cfg").string();
  std::ofstream(path) << Replace(kMinimal, "dut phone", "dut nobody");
  std::ostringstream out, err;
  EXPECT_EQ(RunScenarioFile(path, {}, out, err), kExitConfigError);
  EXPECT_NE(err.str().find("dut"), std::string::npos);
  EXPECT_EQ(RunScenarioFile((dir / "missing.cfg").string(), {}, out, err), kExitConfigError);
}

TEST(LoadScenarioDir, SortedByFileName) {
  auto configs = LoadScenarioDir(testing::ScenarioPath("bonded-mismatch"));
  ASSERT_EQ(configs.size(), 8u);
  EXPECT_EQ(configs.front().id, "bonded-mismatch/gnome-bluez");
  EXPECT_EQ(configs.back().id, "bonded-mismatch/windows");
}

}  // namespace
}  // namespace authlab::scenario
