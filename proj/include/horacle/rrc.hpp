// Copyright 2026 The Horacle Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string_view>

namespace horacle::rrc {

struct RrcThresholds {
  double a1_dbm = -125.0;
  double a2_dbm = -130.0;
  double b2_dbm = -95.0;
  int time_to_trigger_ms = 0;

  /// Throws std::invalid_argument unless a2 <= a1 and time_to_trigger >= 0.
  void validate() const;
};

enum class ServingBand { kLte, kNr };

struct RrcState {
  bool gap_open = false;
  /// Mobility command issued; random access happens on the next tick.
  bool pending_execution = false;
  ServingBand serving = ServingBand::kLte;
};

struct EventSet {
  bool a1 = false;
  bool a2 = false;
  bool b2 = false;

  bool operator==(const EventSet&) const = default;
};

struct TickCounters {
  std::uint64_t attempts = 0;    // trigger point A
  std::uint64_t executions = 0;  // trigger point B
  std::uint64_t failures = 0;

  TickCounters& operator+=(const TickCounters& o) {
    attempts += o.attempts;
    executions += o.executions;
    failures += o.failures;
    return *this;
  }
  bool operator==(const TickCounters&) const = default;
};

enum class Decision {
  kNone,
  kExecute,   // mobility command sent
  kOverride,  // predicted failure, A2 request preempted
};

std::string_view to_string(Decision d);

/// Entering conditions for one tick, evaluated against the gap state at
/// the start of the tick. B2 is masked while the gap is closed.
EventSet evaluate_events(double lte_rsrp_dbm, double mm_rsrp_dbm,
                         const RrcThresholds& thresholds, const RrcState& state);

/// Time-to-trigger filter: an event is reported once its entering
/// condition has held on more than `ttt_ticks` consecutive ticks.
class EventTrigger {
 public:
  explicit EventTrigger(int ttt_ticks = 0) : ttt_(ttt_ticks) {}

  EventSet apply(const EventSet& entering);

 private:
  int ttt_;
  int a1_run_ = 0;
  int a2_run_ = 0;
  int b2_run_ = 0;
};

/// Measured handover. A2 opens the gap and steps attempts, A1 closes it,
/// B2 seen inside the gap issues the mobility command; a B2 report wins
/// over an A1 report on the same tick.
Decision step_baseline(RrcState& state, const EventSet& events,
                       TickCounters& counters);

/// Partially blind handover. With the gate closed this is step_baseline.
/// With the gate open, A2 steps attempts and the prediction decides
/// immediately; no gap is configured.
Decision step_proposed(RrcState& state, const EventSet& events,
                       bool predicted_success, bool gate_passed,
                       TickCounters& counters);

}  // namespace horacle::rrc
