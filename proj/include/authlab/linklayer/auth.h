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

#include <array>
#include <cstdint>

#include "authlab/core/address.h"
#include "authlab/core/rng.h"
#include "authlab/core/types.h"

namespace authlab::linklayer {

using Challenge = std::array<uint8_t, 16>;

Challenge DrawChallenge(ScenarioRng& rng);

// Keyed response standing in for the controller authentication functions.
//
//   response = first four octets, big-endian, of
//              HMAC-SHA-256(key = link key octets,
//                           message = challenge (16) || claimant (6))
//
// Key octets are taken in text order (most significant first) and the
// claimant address in display order. Any implementation of HMAC-SHA-256
// reproduces the same value.
uint32_t AuthResponse(const LinkKey& key, const Challenge& challenge,
                      const DeviceAddress& claimant);

}  // namespace authlab::linklayer
