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
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "horacle/simulator.hpp"

#include "json.hpp"

namespace horacle::cli {

/// Invalid configuration; `key()` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class CalibrationMode { kOff, kManual, kPercentile };

std::string_view to_string(CalibrationMode m);

/// Percentile targets for threshold auto-calibration. a2/a1 are taken from
/// the LTE RSRP distribution, b2 from non-outage mmWave RSRP.
struct CalibrationSpec {
  double a2_percentile = 20.0;
  double a1_percentile = 40.0;
  double b2_percentile = 95.0;
  int warmup_ticks = 100;

  void validate() const;
  bool operator==(const CalibrationSpec&) const = default;
};

struct RunManifest {
  sim::SimConfig config;
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path out_dir;
  std::string grid_preset = "paper";
  CalibrationMode calibration = CalibrationMode::kOff;
  CalibrationSpec calibration_spec;
};

/// Output directory used when run.out is not set: $HORACLE_OUT, else
/// ./horacle_out.
std::filesystem::path default_out_dir();

/// Flat `key = value` settings. `#` starts a comment.
using Settings = std::map<std::string, std::string, std::less<>>;

Settings parse_settings(std::string_view text);

/// Resolves settings over the defaults and validates the result.
/// Throws ConfigError naming the first invalid key.
RunManifest resolve_manifest(const Settings& settings);

/// Reads `path` (may be empty for pure defaults) and applies `overrides`
/// on top of the file's settings.
RunManifest parse_config(const std::filesystem::path& path, const Settings& overrides = {});

/// Every recognized settings key, in documentation order.
std::vector<std::string> known_keys();

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

bool same_resolution(const RunManifest& a, const RunManifest& b);

}  // namespace horacle::cli
