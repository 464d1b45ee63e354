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

#include <optional>
#include <string_view>

#include "horacle/random.hpp"

namespace horacle::channel {

/// Sub-6 GHz LTE link budget. Path loss is COST231-Hata (large city),
/// line of sight, no shadowing.
struct LteChannelParams {
  double center_freq_mhz = 2100.0;
  double bandwidth_mhz = 20.0;
  double bs_height_m = 20.0;
  double ue_height_m = 1.5;
  double tx_power_dbm = 46.0;
  double antenna_gain_dbi = 17.0;
  int num_re = 1200;
  double urban_correction_db = 3.0;
  double calibration_offset_db = 0.0;

  void validate() const;
};

/// 28 GHz link budget with a three-state (LOS / NLOS / outage) random
/// blockage model and log-distance path loss per state.
struct MmWaveChannelParams {
  double center_freq_ghz = 28.0;
  double bandwidth_mhz = 100.0;
  double tx_power_dbm = 46.0;
  double antenna_gain_dbi = 24.0;
  int num_re = 792;
  double los_intercept_db = 61.4;
  double los_exponent = 2.0;
  double nlos_intercept_db = 72.0;
  double nlos_exponent = 2.92;
  double outage_decay_m = 30.0;
  double outage_offset = 5.2;
  double los_decay_m = 67.1;
  double outage_floor_dbm = -180.0;
  double calibration_offset_db = 0.0;

  void validate() const;
};

enum class LinkState { kLos, kNlos, kOutage };

std::string_view to_string(LinkState s);

/// COST231-Hata urban path loss in dB. Distances below 1 m are clamped.
/// Throws std::invalid_argument for nonpositive heights or frequency.
double cost231_path_loss(double freq_mhz, double distance_km, double bs_height_m,
                         double ue_height_m, double urban_correction_db);

/// Large-city mobile antenna height correction a(h_m).
double cost231_mobile_correction(double ue_height_m);

struct BlockageProbabilities {
  double outage = 0.0;
  double los = 0.0;
  double nlos = 0.0;
};

BlockageProbabilities blockage_probabilities(double distance_m,
                                             const MmWaveChannelParams& params);

LinkState draw_link_state(double distance_m, const MmWaveChannelParams& params,
                          Engine& rng);

/// Path loss in dB for LOS / NLOS; std::nullopt marks outage.
std::optional<double> mmwave_path_loss(double distance_m, LinkState state,
                                       const MmWaveChannelParams& params);

/// Received power per resource element in dBm.
double rsrp(double tx_power_dbm, double antenna_gain_dbi, double path_loss_db,
            int num_re, double calibration_offset_db = 0.0);

double lte_rsrp(double distance_m, const LteChannelParams& params);

/// Outage maps to params.outage_floor_dbm.
double mmwave_rsrp(double distance_m, LinkState state,
                   const MmWaveChannelParams& params);

}  // namespace horacle::channel
