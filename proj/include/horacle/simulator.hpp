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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "horacle/channel.hpp"
#include "horacle/gbdt.hpp"
#include "horacle/geometry.hpp"
#include "horacle/modelsel.hpp"
#include "horacle/rrc.hpp"

namespace horacle::sim {

/// Feature columns: x, y, distance, rsrp_lte, rsrp_mmwave,
/// gap_closed_event (A1), gap_open_event (A2).
inline constexpr std::size_t kNumFeatures = 7;

struct SimConfig {
  int t_sim_ms = 400;  // one tick per millisecond
  int t_coherence_ms = 400;
  double r_training = 0.7;
  geometry::PppConfig ppp{};
  channel::LteChannelParams lte{};
  channel::MmWaveChannelParams mmwave{};
  rrc::RrcThresholds thresholds{};
  modelsel::GateConfig gate{};
  modelsel::Grid grid = modelsel::Grid::paper();
  std::uint64_t seed = 1;
  /// Count handover metrics over the whole run instead of only after the
  /// collection period.
  bool include_collection_region = false;
  /// Diagnostic: reject every model so the proposed pass is pure baseline.
  bool force_gate_off = false;
  /// Workers for the per-UE training map; 0 picks hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct UeSample {
  geometry::UePosition position;
  double distance_m = 0.0;
  double rsrp_lte_dbm = 0.0;
  channel::LinkState link = channel::LinkState::kLos;
  double rsrp_mmwave_dbm = 0.0;

  bool operator==(const UeSample&) const = default;
};

/// Immutable per-tick, per-UE environment. Ticks are numbered 1..num_ticks.
class EnvironmentTrace {
 public:
  EnvironmentTrace(std::size_t num_ues, int num_ticks, std::vector<UeSample> samples);

  std::size_t num_ues() const { return num_ues_; }
  int num_ticks() const { return num_ticks_; }
  const UeSample& at(std::size_t ue, int tick) const;

  bool operator==(const EnvironmentTrace&) const = default;

 private:
  std::size_t num_ues_;
  int num_ticks_;
  std::vector<UeSample> samples_;  // [ue][tick - 1]
};

/// Draws the population once, then per tick resamples every position and
/// blockage state. Thresholds play no part, so the trace is shared by both
/// handover algorithms.
EnvironmentTrace generate_trace(const SimConfig& cfg, std::uint64_t seed);

/// min(t_coherence, ceil(r_training * t_sim))
int collection_period(int t_sim_ms, int t_coherence_ms, double r_training);

/// 1 iff the gap was open during the tick and mmWave RSRP exceeds B2.
int compute_label(bool gap_open_during_tick, double mm_rsrp_dbm, double b2_dbm);

enum class AccessOutcome { kSuccess, kFailure };

/// Random access one tick after the mobility command. At or below the B2
/// threshold the access fails, the UE stays on LTE and the gap closes;
/// otherwise the UE moves to NR.
AccessOutcome resolve_access(rrc::RrcState& state, double mm_rsrp_at_access_dbm,
                             double b2_dbm, rrc::TickCounters& counters);

/// 100 * (1 - failures / attempts); std::nullopt when attempts == 0.
std::optional<double> success_rate(std::uint64_t attempts, std::uint64_t failures);

struct MeasurementRow {
  int tick = 0;
  double x = 0.0;
  double y = 0.0;
  double distance_m = 0.0;
  double rsrp_lte_dbm = 0.0;
  double rsrp_mmwave_dbm = 0.0;
  bool gap_closed_event = false;
  bool gap_open_event = false;
  int label = 0;

  std::array<double, kNumFeatures> features() const;
};

/// One LTE-served tick of one UE as seen by both passes.
struct TickRecord {
  MeasurementRow row;
  rrc::EventSet events;
  channel::LinkState link = channel::LinkState::kLos;
  bool gap_open_during_tick = false;
  rrc::Decision baseline_decision = rrc::Decision::kNone;
  rrc::Decision proposed_decision = rrc::Decision::kNone;
};

struct AlgorithmReport {
  rrc::TickCounters counters;
  std::optional<double> success_rate_pct;
};

struct UeReport {
  std::size_t ue = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t train_positives = 0;
  std::size_t test_positives = 0;
  std::optional<gbdt::Hyperparameters> chosen;
  std::optional<double> cv_auc;
  std::optional<double> test_auc;
  bool gate_passed = false;
  std::vector<modelsel::RocPoint> roc;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::size_t n_ues = 0;
  int collection_period_ms = 0;
  rrc::RrcThresholds thresholds;
  AlgorithmReport baseline;
  AlgorithmReport proposed;
  std::vector<UeReport> ues;
  std::vector<std::vector<TickRecord>> timelines;  // per UE
};

/// Full experiment on a freshly generated trace for cfg.seed.
RunReport run_experiment(const SimConfig& cfg);

/// Same, on a caller-supplied trace.
RunReport run_experiment(const SimConfig& cfg, const EnvironmentTrace& trace);

}  // namespace horacle::sim
