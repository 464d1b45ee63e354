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

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "horacle/random.hpp"

namespace horacle::geometry {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Circular cell served by co-located LTE and mmWave sites at the origin.
struct CellGeometry {
  double radius_m = 350.0;
  Point bs_position{};

  /// Throws std::invalid_argument unless radius_m > 0.
  void validate() const;
};

/// Homogeneous Poisson point process over a cell. `intensity` is the
/// expected number of users per square meter.
struct PppConfig {
  double intensity = 2e-4;
  CellGeometry cell{};

  void validate() const;
};

/// UE position in polar form about the base station.
struct UePosition {
  double radial_m = 0.0;
  double angle_rad = 0.0;

  Point cartesian() const;
  bool operator==(const UePosition&) const = default;
};

/// Expected population, intensity * pi * r^2.
double mean_user_count(const PppConfig& cfg);

/// One Poisson draw of the population size.
std::size_t draw_user_count(const PppConfig& cfg, Engine& rng);

/// Radial distance and angle are drawn independently and uniformly on
/// [0, r] and [0, 2pi). This is uniform in polar coordinates, which is
/// denser near the origin than a uniform-in-area draw.
UePosition sample_position(const CellGeometry& cell, Engine& rng);

/// Memoryless mobility: every UE gets a fresh independent position.
/// `streams[i]` is the private stream of UE i.
void resample_positions(std::span<UePosition> ues, const CellGeometry& cell,
                        std::span<Engine> streams);

double distance_to_bs(const UePosition& p);
double distance_to_bs(const Point& p);

}  // namespace horacle::geometry
