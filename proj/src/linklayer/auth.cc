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

#include "authlab/linklayer/auth.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace authlab::linklayer {

Challenge DrawChallenge(ScenarioRng& rng) {
  return rng.NextKey().octets();
}

uint32_t AuthResponse(const LinkKey& key, const Challenge& challenge,
                      const DeviceAddress& claimant) {
  std::array<uint8_t, Challenge{}.size() + DeviceAddress::kSize> message{};
  std::copy(challenge.begin(), challenge.end(), message.begin());
  std::copy(claimant.octets().begin(), claimant.octets().end(),
            message.begin() + challenge.size());

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_length = 0;
  if (HMAC(EVP_sha256(), key.octets().data(), static_cast<int>(key.octets().size()),
           message.data(), message.size(), digest, &digest_length) == nullptr ||
      digest_length < 4) {
    throw std::runtime_error("HMAC-SHA-256 failed");
  }
  return static_cast<uint32_t>(digest[0]) << 24 | static_cast<uint32_t>(digest[1]) << 16 |
         static_cast<uint32_t>(digest[2]) << 8 | static_cast<uint32_t>(digest[3]);
}

}  // namespace authlab::linklayer
