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
#include <random>

#include "authlab/core/types.h"

namespace authlab {

// Seeded generator for challenges and fresh keys. Only raw engine output is
// used (never std:: distributions) so sequences match across toolchains.
class ScenarioRng {
 public:
  explicit ScenarioRng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  LinkKey NextKey() {
    LinkKey::Octets octets{};
    for (size_t half = 0; half < 2; ++half) {
      uint64_t word = engine_();
      for (size_t i = 0; i < 8; ++i) {
        octets[half * 8 + i] = static_cast<uint8_t>(word >> (56 - 8 * i));
      }
    }
    return LinkKey(octets);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace authlab
