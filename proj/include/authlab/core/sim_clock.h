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
#include <deque>
#include <functional>

namespace authlab {

// Microseconds since simulation start.
using SimTime = uint64_t;

class SimClock {
 public:
  SimTime now() const { return now_; }

 private:
  friend class Scheduler;
  void Advance(SimTime delta) { now_ += delta; }

  SimTime now_ = 0;
};

// FIFO task queue; every executed task advances the clock by one slot.
class Scheduler {
 public:
  // One BR/EDR slot.
  static constexpr SimTime kSlotMicros = 625;

  void Post(std::function<void()> task) { queue_.push_back(std::move(task)); }

  // Advances the clock without running anything (idle gaps between steps).
  void Idle(SimTime micros) { clock_.Advance(micros); }

  // Returns the number of tasks executed.
  size_t RunUntilIdle();

  const SimClock& clock() const { return clock_; }
  SimTime now() const { return clock_.now(); }

 private:
  SimClock clock_;
  std::deque<std::function<void()>> queue_;
};

}  // namespace authlab
