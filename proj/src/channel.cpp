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

#include "horacle/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace horacle::channel {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

void LteChannelParams::validate() const {
  require_positive(center_freq_mhz, "channel.lte.center_freq_mhz");
  require_positive(bandwidth_mhz, "channel.lte.bandwidth_mhz");
  require_positive(bs_height_m, "channel.lte.bs_height_m");
  require_positive(ue_height_m, "channel.lte.ue_height_m");
  if (num_re < 1) throw std::invalid_argument("channel.lte.num_re must be >= 1");
}

void MmWaveChannelParams::validate() const {
  require_positive(center_freq_ghz, "channel.mmwave.center_freq_ghz");
  require_positive(bandwidth_mhz, "channel.mmwave.bandwidth_mhz");
  require_positive(los_exponent, "channel.mmwave.los_exponent");
  require_positive(nlos_exponent, "channel.mmwave.nlos_exponent");
  require_positive(outage_decay_m, "channel.mmwave.outage_decay_m");
  require_positive(los_decay_m, "channel.mmwave.los_decay_m");
  if (num_re < 1) throw std::invalid_argument("channel.mmwave.num_re must be >= 1");
  if (!std::isfinite(outage_floor_dbm)) {
    throw std::invalid_argument("channel.mmwave.outage_floor_dbm must be finite");
  }
}

std::string_view to_string(LinkState s) {
  switch (s) {
    case LinkState::kLos: return "LOS";
    case LinkState::kNlos: return "NLOS";
    case LinkState::kOutage: return "OUTAGE";
  }
  return "?";
}

double cost231_mobile_correction(double ue_height_m) {
  const double l = std::log10(11.75 * ue_height_m);
  return 3.2 * l * l - 4.97;
}

double cost231_path_loss(double freq_mhz, double distance_km, double bs_height_m,
                         double ue_height_m, double urban_correction_db) {
  require_positive(freq_mhz, "COST231 frequency");
  require_positive(bs_height_m, "COST231 base station height");
  require_positive(ue_height_m, "COST231 UE height");
  const double d = std::max(distance_km, 0.001);
  const double log_hb = std::log10(bs_height_m);
  return 46.3 + 33.9 * std::log10(freq_mhz) - 13.82 * log_hb -
         cost231_mobile_correction(ue_height_m) +
         (44.9 - 6.55 * log_hb) * std::log10(d) + urban_correction_db;
}

BlockageProbabilities blockage_probabilities(double distance_m,
                                             const MmWaveChannelParams& params) {
  const double d = std::max(distance_m, 0.0);
  BlockageProbabilities p;
  p.outage = std::max(0.0, 1.0 - std::exp(-d / params.outage_decay_m +
                                          params.outage_offset));
  p.los = (1.0 - p.outage) * std::exp(-d / params.los_decay_m);
  p.nlos = std::max(0.0, 1.0 - p.outage - p.los);
  return p;
}

LinkState draw_link_state(double distance_m, const MmWaveChannelParams& params,
                          Engine& rng) {
  const BlockageProbabilities p = blockage_probabilities(distance_m, params);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double x = u(rng);
  if (x < p.outage) return LinkState::kOutage;
  if (x < p.outage + p.los) return LinkState::kLos;
  return LinkState::kNlos;
}

std::optional<double> mmwave_path_loss(double distance_m, LinkState state,
                                       const MmWaveChannelParams& params) {
  const double d = std::max(distance_m, 1.0);
  switch (state) {
    case LinkState::kLos:
      return params.los_intercept_db + 10.0 * params.los_exponent * std::log10(d);
    case LinkState::kNlos:
      return params.nlos_intercept_db + 10.0 * params.nlos_exponent * std::log10(d);
    case LinkState::kOutage:
      break;
  }
  return std::nullopt;
}

double rsrp(double tx_power_dbm, double antenna_gain_dbi, double path_loss_db,
            int num_re, double calibration_offset_db) {
  if (num_re < 1) throw std::invalid_argument("rsrp: num_re must be >= 1");
  return tx_power_dbm - 10.0 * std::log10(static_cast<double>(num_re)) +
         antenna_gain_dbi - path_loss_db + calibration_offset_db;
}

double lte_rsrp(double distance_m, const LteChannelParams& params) {
  const double pl =
      cost231_path_loss(params.center_freq_mhz, distance_m / 1000.0,
                        params.bs_height_m, params.ue_height_m,
                        params.urban_correction_db);
  return rsrp(params.tx_power_dbm, params.antenna_gain_dbi, pl, params.num_re,
              params.calibration_offset_db);
}

double mmwave_rsrp(double distance_m, LinkState state,
                   const MmWaveChannelParams& params) {
  const auto pl = mmwave_path_loss(distance_m, state, params);
  if (!pl) return params.outage_floor_dbm;
  return rsrp(params.tx_power_dbm, params.antenna_gain_dbi, *pl, params.num_re,
              params.calibration_offset_db);
}

}  // namespace horacle::channel
