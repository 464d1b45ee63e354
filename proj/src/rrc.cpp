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

#include "horacle/rrc.hpp"

#include <cmath>
#include <stdexcept>

namespace horacle::rrc {

void RrcThresholds::validate() const {
  if (!std::isfinite(a1_dbm) || !std::isfinite(a2_dbm) || !std::isfinite(b2_dbm)) {
    throw std::invalid_argument("rrc thresholds must be finite");
  }
  if (a2_dbm > a1_dbm) {
    throw std::invalid_argument("rrc.a2_dbm must not exceed rrc.a1_dbm");
  }
  if (time_to_trigger_ms < 0) {
    throw std::invalid_argument("rrc.time_to_trigger_ms must be >= 0");
  }
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kNone: return "none";
    case Decision::kExecute: return "execute";
    case Decision::kOverride: return "override";
  }
  return "?";
}

EventSet evaluate_events(double lte_rsrp_dbm, double mm_rsrp_dbm,
                         const RrcThresholds& thresholds, const RrcState& state) {
  EventSet e;
  if (state.serving != ServingBand::kLte) return e;
  e.a2 = !state.gap_open && lte_rsrp_dbm < thresholds.a2_dbm;
  e.a1 = state.gap_open && lte_rsrp_dbm > thresholds.a1_dbm;
  e.b2 = state.gap_open && mm_rsrp_dbm > thresholds.b2_dbm;
  return e;
}

EventSet EventTrigger::apply(const EventSet& entering) {
  a1_run_ = entering.a1 ? a1_run_ + 1 : 0;
  a2_run_ = entering.a2 ? a2_run_ + 1 : 0;
  b2_run_ = entering.b2 ? b2_run_ + 1 : 0;
  return {a1_run_ > ttt_, a2_run_ > ttt_, b2_run_ > ttt_};
}

Decision step_baseline(RrcState& state, const EventSet& events,
                       TickCounters& counters) {
  if (state.serving != ServingBand::kLte || state.pending_execution) {
    return Decision::kNone;
  }
  if (events.a2 && !state.gap_open) {
    ++counters.attempts;
    state.gap_open = true;
    return Decision::kNone;
  }
  if (!state.gap_open) return Decision::kNone;
  if (events.b2) {
    ++counters.executions;
    state.pending_execution = true;
    return Decision::kExecute;
  }
  if (events.a1) state.gap_open = false;
  return Decision::kNone;
}

Decision step_proposed(RrcState& state, const EventSet& events,
                       bool predicted_success, bool gate_passed,
                       TickCounters& counters) {
  if (!gate_passed) return step_baseline(state, events, counters);
  state.gap_open = false;
  if (state.serving != ServingBand::kLte || state.pending_execution) {
    return Decision::kNone;
  }
  if (!events.a2) return Decision::kNone;
  ++counters.attempts;
  if (predicted_success) {
    ++counters.executions;
    state.pending_execution = true;
    return Decision::kExecute;
  }
  return Decision::kOverride;
}

}  // namespace horacle::rrc
