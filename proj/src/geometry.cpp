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

#include "horacle/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace horacle::geometry {

void CellGeometry::validate() const {
  if (!(radius_m > 0.0) || !std::isfinite(radius_m)) {
    throw std::invalid_argument("geometry.radius_m must be positive, got " +
                                std::to_string(radius_m));
  }
}

void PppConfig::validate() const {
  cell.validate();
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw std::invalid_argument("geometry.intensity must be >= 0");
  }
}

Point UePosition::cartesian() const {
  return {radial_m * std::cos(angle_rad), radial_m * std::sin(angle_rad)};
}

double mean_user_count(const PppConfig& cfg) {
  return cfg.intensity * std::numbers::pi * cfg.cell.radius_m * cfg.cell.radius_m;
}

std::size_t draw_user_count(const PppConfig& cfg, Engine& rng) {
  const double mean = mean_user_count(cfg);
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::size_t> dist(mean);
  return dist(rng);
}

UePosition sample_position(const CellGeometry& cell, Engine& rng) {
  if (cell.radius_m <= 0.0) return {};
  std::uniform_real_distribution<double> radial(0.0, cell.radius_m);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  UePosition p;
  p.radial_m = radial(rng);
  p.angle_rad = angle(rng);
  // uniform_real_distribution may round up onto the open bound.
  if (p.angle_rad >= kTwoPi) p.angle_rad = 0.0;
  return p;
}

void resample_positions(std::span<UePosition> ues, const CellGeometry& cell,
                        std::span<Engine> streams) {
  if (ues.size() != streams.size()) {
    throw std::invalid_argument("resample_positions: one stream per UE required");
  }
  for (std::size_t i = 0; i < ues.size(); ++i) {
    ues[i] = sample_position(cell, streams[i]);
  }
}

double distance_to_bs(const UePosition& p) { return p.radial_m; }

double distance_to_bs(const Point& p) { return std::hypot(p.x, p.y); }

}  // namespace horacle::geometry
