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
#include <ostream>
#include <span>
#include <stdexcept>

#include "horacle/config.hpp"

namespace horacle::cli {

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear-interpolation percentile (p in [0, 100]) of unsorted values.
double percentile(std::span<const double> values, double p);

/// A2/A1 from the LTE RSRP sample, B2 from the non-outage mmWave sample.
/// Throws CalibrationError when the result is degenerate (A2 >= A1) or a
/// sample is empty.
rrc::RrcThresholds thresholds_from_samples(std::span<const double> lte_rsrp_dbm,
                                           std::span<const double> mm_rsrp_dbm,
                                           const CalibrationSpec& spec, int time_to_trigger_ms);

/// Thresholds from the first `spec.warmup_ticks` ticks of the seed's trace.
rrc::RrcThresholds calibrate_thresholds(const sim::SimConfig& cfg, const CalibrationSpec& spec,
                                        std::uint64_t seed);

/// The SimConfig actually run for one seed, after the calibration mode is
/// applied.
sim::SimConfig effective_config(const RunManifest& m, std::uint64_t seed);

/// Runs every seed and writes outputs under m.out_dir. Returns a process
/// exit code: 0 success, 2 runtime failure. Progress goes to `log`.
int run_batch(const RunManifest& m, std::ostream& log);

}  // namespace horacle::cli
