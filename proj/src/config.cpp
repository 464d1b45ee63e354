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

#include "horacle/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "horacle/numfmt.hpp"

namespace horacle::cli {

namespace {

enum class Kind { kNumber, kInteger, kBool, kString, kNumberList, kIntegerList, kStringList };

struct KeySpec {
  std::string name;
  Kind kind;
  std::function<void(RunManifest&, std::string_view)> set;
  std::function<std::string(const RunManifest&)> get;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double to_double(const std::string& key, std::string_view s) {
  const auto v = parse_number<double>(s);
  if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a number, got '" + std::string(s) + "'");
  return *v;
}

long long to_integer(const std::string& key, std::string_view s) {
  const auto v = parse_number<long long>(s);
  if (!v) throw ConfigError(key, "expected an integer, got '" + std::string(s) + "'");
  return *v;
}

bool to_bool(const std::string& key, std::string_view s) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key, "expected a boolean, got '" + std::string(s) + "'");
}

template <typename T>
std::string join(const std::vector<T>& v, std::function<std::string(const T&)> fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

using Check = std::function<bool(double)>;

const Check kAny = [](double) { return true; };
const Check kPositive = [](double v) { return v > 0.0; };
const Check kNonNegative = [](double v) { return v >= 0.0; };

KeySpec number_key(std::string name, std::function<double&(RunManifest&)> ref,
                   Check check = kAny, std::string rule = {}) {
  return {name, Kind::kNumber,
          [=](RunManifest& m, std::string_view s) {
            const double v = to_double(name, s);
            if (!check(v)) throw ConfigError(name, rule + ", got " + std::string(trim(s)));
            ref(m) = v;
          },
          [=](const RunManifest& m) { return format_double(ref(const_cast<RunManifest&>(m))); }};
}

template <typename Int>
KeySpec integer_key(std::string name, std::function<Int&(RunManifest&)> ref,
                    long long min_value) {
  return {name, Kind::kInteger,
          [=](RunManifest& m, std::string_view s) {
            const long long v = to_integer(name, s);
            if (v < min_value) {
              throw ConfigError(name, "must be >= " + std::to_string(min_value) + ", got " +
                                          std::to_string(v));
            }
            ref(m) = static_cast<Int>(v);
          },
          [=](const RunManifest& m) { return std::to_string(ref(const_cast<RunManifest&>(m))); }};
}

KeySpec bool_key(std::string name, std::function<bool&(RunManifest&)> ref) {
  return {name, Kind::kBool,
          [=](RunManifest& m, std::string_view s) { ref(m) = to_bool(name, s); },
          [=](const RunManifest& m) {
            return std::string(ref(const_cast<RunManifest&>(m)) ? "true" : "false");
          }};
}

KeySpec number_list_key(std::string name,
                        std::function<std::vector<double>&(RunManifest&)> ref, Check check,
                        std::string rule) {
  return {name, Kind::kNumberList,
          [=](RunManifest& m, std::string_view s) {
            std::vector<double> values;
            for (auto item : split_list(s)) {
              const double v = to_double(name, item);
              if (!check(v)) throw ConfigError(name, rule + ", got " + std::string(item));
              values.push_back(v);
            }
            if (values.empty()) throw ConfigError(name, "needs at least one value");
            ref(m) = std::move(values);
          },
          [=](const RunManifest& m) {
            return join<double>(ref(const_cast<RunManifest&>(m)),
                                [](const double& v) { return format_double(v); });
          }};
}

std::vector<KeySpec> build_keys() {
  using M = RunManifest;
  std::vector<KeySpec> k;

  k.push_back({"run.seeds", Kind::kIntegerList,
               [](M& m, std::string_view s) {
                 std::vector<std::uint64_t> seeds;
                 for (auto item : split_list(s)) {
                   const auto v = parse_number<std::uint64_t>(item);
                   if (!v) throw ConfigError("run.seeds", "expected unsigned integers, got '" + std::string(item) + "'");
                   seeds.push_back(*v);
                 }
                 if (seeds.empty()) throw ConfigError("run.seeds", "seed list must be nonempty");
                 m.seeds = std::move(seeds);
               },
               [](const M& m) {
                 return join<std::uint64_t>(m.seeds, [](const std::uint64_t& v) { return std::to_string(v); });
               }});
  k.push_back({"run.out", Kind::kString,
               [](M& m, std::string_view s) {
                 if (trim(s).empty()) throw ConfigError("run.out", "must not be empty");
                 m.out_dir = std::string(trim(s));
               },
               [](const M& m) { return m.out_dir.string(); }});

  k.push_back(integer_key<int>("sim.t_sim_ms", [](M& m) -> int& { return m.config.t_sim_ms; }, 1));
  k.push_back(integer_key<int>("sim.t_coherence_ms", [](M& m) -> int& { return m.config.t_coherence_ms; }, 1));
  k.push_back(number_key("sim.r_training", [](M& m) -> double& { return m.config.r_training; },
                         [](double v) { return v > 0.0 && v < 1.0; }, "must be in (0, 1)"));
  k.push_back(bool_key("sim.include_collection_region",
                       [](M& m) -> bool& { return m.config.include_collection_region; }));
  k.push_back(bool_key("sim.force_gate_off", [](M& m) -> bool& { return m.config.force_gate_off; }));
  k.push_back(integer_key<unsigned>("sim.threads", [](M& m) -> unsigned& { return m.config.threads; }, 0));

  k.push_back(number_key("geometry.intensity", [](M& m) -> double& { return m.config.ppp.intensity; },
                         kNonNegative, "must be >= 0"));
  k.push_back(number_key("geometry.radius_m", [](M& m) -> double& { return m.config.ppp.cell.radius_m; },
                         kPositive, "must be > 0"));

  auto lte = [&](const std::string& n, double channel::LteChannelParams::*f, Check c = kAny,
                 std::string rule = {}) {
    k.push_back(number_key("channel.lte." + n, [f](M& m) -> double& { return m.config.lte.*f; }, c, rule));
  };
  lte("center_freq_mhz", &channel::LteChannelParams::center_freq_mhz, kPositive, "must be > 0");
  lte("bandwidth_mhz", &channel::LteChannelParams::bandwidth_mhz, kPositive, "must be > 0");
  lte("bs_height_m", &channel::LteChannelParams::bs_height_m, kPositive, "must be > 0");
  lte("ue_height_m", &channel::LteChannelParams::ue_height_m, kPositive, "must be > 0");
  lte("tx_power_dbm", &channel::LteChannelParams::tx_power_dbm);
  lte("antenna_gain_dbi", &channel::LteChannelParams::antenna_gain_dbi);
  k.push_back(integer_key<int>("channel.lte.num_re", [](M& m) -> int& { return m.config.lte.num_re; }, 1));
  lte("urban_correction_db", &channel::LteChannelParams::urban_correction_db);
  lte("calibration_offset_db", &channel::LteChannelParams::calibration_offset_db);

  auto mm = [&](const std::string& n, double channel::MmWaveChannelParams::*f, Check c = kAny,
                std::string rule = {}) {
    k.push_back(number_key("channel.mmwave." + n, [f](M& m) -> double& { return m.config.mmwave.*f; }, c, rule));
  };
  mm("center_freq_ghz", &channel::MmWaveChannelParams::center_freq_ghz, kPositive, "must be > 0");
  mm("bandwidth_mhz", &channel::MmWaveChannelParams::bandwidth_mhz, kPositive, "must be > 0");
  mm("tx_power_dbm", &channel::MmWaveChannelParams::tx_power_dbm);
  mm("antenna_gain_dbi", &channel::MmWaveChannelParams::antenna_gain_dbi);
  k.push_back(integer_key<int>("channel.mmwave.num_re", [](M& m) -> int& { return m.config.mmwave.num_re; }, 1));
  mm("los_intercept_db", &channel::MmWaveChannelParams::los_intercept_db);
  mm("los_exponent", &channel::MmWaveChannelParams::los_exponent, kPositive, "must be > 0");
  mm("nlos_intercept_db", &channel::MmWaveChannelParams::nlos_intercept_db);
  mm("nlos_exponent", &channel::MmWaveChannelParams::nlos_exponent, kPositive, "must be > 0");
  mm("outage_decay_m", &channel::MmWaveChannelParams::outage_decay_m, kPositive, "must be > 0");
  mm("outage_offset", &channel::MmWaveChannelParams::outage_offset);
  mm("los_decay_m", &channel::MmWaveChannelParams::los_decay_m, kPositive, "must be > 0");
  mm("outage_floor_dbm", &channel::MmWaveChannelParams::outage_floor_dbm);
  mm("calibration_offset_db", &channel::MmWaveChannelParams::calibration_offset_db);

  k.push_back(number_key("rrc.a1_dbm", [](M& m) -> double& { return m.config.thresholds.a1_dbm; }));
  k.push_back(number_key("rrc.a2_dbm", [](M& m) -> double& { return m.config.thresholds.a2_dbm; }));
  k.push_back(number_key("rrc.b2_dbm", [](M& m) -> double& { return m.config.thresholds.b2_dbm; }));
  k.push_back(integer_key<int>("rrc.time_to_trigger_ms",
                               [](M& m) -> int& { return m.config.thresholds.time_to_trigger_ms; }, 0));

  k.push_back(number_key("gate.epsilon", [](M& m) -> double& { return m.config.gate.epsilon; },
                         [](double v) { return v >= 0.5 && v <= 1.0; }, "must be in [0.5, 1]"));

  // grid.preset precedes the individual grid keys so they can refine it
  k.push_back({"grid.preset", Kind::kString,
               [](M& m, std::string_view s) {
                 const auto g = modelsel::Grid::preset(trim(s));
                 if (!g) throw ConfigError("grid.preset", "expected 'paper' or 'reduced', got '" + std::string(trim(s)) + "'");
                 m.grid_preset = std::string(trim(s));
                 m.config.grid = *g;
               },
               [](const M& m) { return m.grid_preset; }});
  k.push_back({"grid.objective", Kind::kStringList,
               [](M& m, std::string_view s) {
                 std::vector<gbdt::Objective> objs;
                 for (auto item : split_list(s)) {
                   const auto o = gbdt::parse_objective(item);
                   if (!o) throw ConfigError("grid.objective", "expected logistic or linear, got '" + std::string(item) + "'");
                   objs.push_back(*o);
                 }
                 if (objs.empty()) throw ConfigError("grid.objective", "needs at least one value");
                 m.config.grid.objectives = std::move(objs);
               },
               [](const M& m) {
                 return join<gbdt::Objective>(m.config.grid.objectives, [](const gbdt::Objective& o) {
                   return std::string(gbdt::to_string(o));
                 });
               }});
  k.push_back(number_list_key("grid.l1_alpha", [](M& m) -> std::vector<double>& { return m.config.grid.l1_alpha; },
                              kNonNegative, "values must be >= 0"));
  k.push_back(number_list_key("grid.l2_lambda", [](M& m) -> std::vector<double>& { return m.config.grid.l2_lambda; },
                              kNonNegative, "values must be >= 0"));
  k.push_back(number_list_key("grid.gamma", [](M& m) -> std::vector<double>& { return m.config.grid.gamma; },
                              kNonNegative, "values must be >= 0"));
  k.push_back(number_list_key("grid.subsample", [](M& m) -> std::vector<double>& { return m.config.grid.subsample; },
                              [](double v) { return v > 0.0 && v <= 1.0; }, "values must be in (0, 1]"));
  k.push_back(number_list_key("grid.min_child_weight",
                              [](M& m) -> std::vector<double>& { return m.config.grid.min_child_weight; },
                              kNonNegative, "values must be >= 0"));
  k.push_back({"grid.max_depth", Kind::kIntegerList,
               [](M& m, std::string_view s) {
                 std::vector<int> depths;
                 for (auto item : split_list(s)) {
                   const long long v = to_integer("grid.max_depth", item);
                   if (v < 0) throw ConfigError("grid.max_depth", "values must be >= 0");
                   depths.push_back(static_cast<int>(v));
                 }
                 if (depths.empty()) throw ConfigError("grid.max_depth", "needs at least one value");
                 m.config.grid.max_depth = std::move(depths);
               },
               [](const M& m) {
                 return join<int>(m.config.grid.max_depth, [](const int& v) { return std::to_string(v); });
               }});
  k.push_back(integer_key<int>("grid.num_estimators", [](M& m) -> int& { return m.config.grid.num_estimators; }, 0));
  k.push_back(integer_key<int>("grid.folds", [](M& m) -> int& { return m.config.grid.folds; }, 1));
  k.push_back(number_key("grid.learning_rate", [](M& m) -> double& { return m.config.grid.learning_rate; },
                         [](double v) { return v > 0.0 && v <= 1.0; }, "must be in (0, 1]"));

  k.push_back({"calibration.mode", Kind::kString,
               [](M& m, std::string_view s) {
                 s = trim(s);
                 if (s == "off") m.calibration = CalibrationMode::kOff;
                 else if (s == "manual") m.calibration = CalibrationMode::kManual;
                 else if (s == "percentile") m.calibration = CalibrationMode::kPercentile;
                 else throw ConfigError("calibration.mode", "expected off, manual or percentile, got '" + std::string(s) + "'");
               },
               [](const M& m) { return std::string(to_string(m.calibration)); }});
  const Check open_percent = [](double v) { return v > 0.0 && v < 100.0; };
  k.push_back(number_key("calibration.a2_percentile", [](M& m) -> double& { return m.calibration_spec.a2_percentile; },
                         open_percent, "must be in (0, 100)"));
  k.push_back(number_key("calibration.a1_percentile", [](M& m) -> double& { return m.calibration_spec.a1_percentile; },
                         open_percent, "must be in (0, 100)"));
  k.push_back(number_key("calibration.b2_percentile", [](M& m) -> double& { return m.calibration_spec.b2_percentile; },
                         open_percent, "must be in (0, 100)"));
  k.push_back(integer_key<int>("calibration.warmup_ticks",
                               [](M& m) -> int& { return m.calibration_spec.warmup_ticks; }, 1));
  return k;
}

const std::vector<KeySpec>& keys() {
  static const std::vector<KeySpec> table = build_keys();
  return table;
}

RunManifest default_manifest() {
  RunManifest m;
  m.out_dir = default_out_dir();
  return m;
}

}  // namespace

std::string_view to_string(CalibrationMode m) {
  switch (m) {
    case CalibrationMode::kOff: return "off";
    case CalibrationMode::kManual: return "manual";
    case CalibrationMode::kPercentile: return "percentile";
  }
  return "?";
}

void CalibrationSpec::validate() const {
  auto in_range = [](double v) { return v > 0.0 && v < 100.0; };
  if (!in_range(a2_percentile)) throw ConfigError("calibration.a2_percentile", "must be in (0, 100)");
  if (!in_range(a1_percentile)) throw ConfigError("calibration.a1_percentile", "must be in (0, 100)");
  if (!in_range(b2_percentile)) throw ConfigError("calibration.b2_percentile", "must be in (0, 100)");
  if (!(a2_percentile < a1_percentile)) {
    throw ConfigError("calibration.a2_percentile", "must be below calibration.a1_percentile");
  }
  if (warmup_ticks < 1) throw ConfigError("calibration.warmup_ticks", "must be >= 1");
}

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("HORACLE_OUT"); env != nullptr && *env != '\0') {
    return env;
  }
  return "horacle_out";
}

Settings parse_settings(std::string_view text) {
  Settings out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == text.npos ? text.npos : eol - pos);
    pos = eol == text.npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == line.npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

RunManifest resolve_manifest(const Settings& settings) {
  const auto& table = keys();
  for (const auto& [key, value] : settings) {
    const bool known = std::any_of(table.begin(), table.end(),
                                   [&](const KeySpec& s) { return s.name == key; });
    if (!known) throw ConfigError(key, "unknown setting");
  }

  RunManifest m = default_manifest();
  for (const KeySpec& spec : table) {
    if (const auto it = settings.find(spec.name); it != settings.end()) spec.set(m, it->second);
  }

  if (m.config.thresholds.a2_dbm > m.config.thresholds.a1_dbm) {
    throw ConfigError("rrc.a2_dbm", "must not exceed rrc.a1_dbm");
  }
  m.calibration_spec.validate();
  try {
    m.config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config", e.what());
  }
  return m;
}

RunManifest parse_config(const std::filesystem::path& path, const Settings& overrides) {
  Settings settings;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    settings = parse_settings(buf.str());
  }
  for (const auto& [key, value] : overrides) settings[key] = value;
  return resolve_manifest(settings);
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& k : keys()) out.push_back(k.name);
  return out;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const KeySpec& spec : keys()) {
    const std::string value = spec.get(m);
    switch (spec.kind) {
      case Kind::kNumber:
        j[spec.name] = *parse_number<double>(value);
        break;
      case Kind::kInteger:
        j[spec.name] = *parse_number<long long>(value);
        break;
      case Kind::kBool:
        j[spec.name] = value == "true";
        break;
      case Kind::kString:
        j[spec.name] = value;
        break;
      case Kind::kNumberList: {
        auto arr = nlohmann::json::array();
        for (auto item : split_list(value)) arr.push_back(*parse_number<double>(item));
        j[spec.name] = arr;
        break;
      }
      case Kind::kIntegerList: {
        auto arr = nlohmann::json::array();
        for (auto item : split_list(value)) arr.push_back(*parse_number<std::uint64_t>(item));
        j[spec.name] = arr;
        break;
      }
      case Kind::kStringList: {
        auto arr = nlohmann::json::array();
        for (auto item : split_list(value)) arr.push_back(std::string(item));
        j[spec.name] = arr;
        break;
      }
    }
  }
  return j;
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("manifest.json", "expected an object");
  Settings settings;
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_float()) return format_double(v.get<double>());
    throw ConfigError("manifest.json", "unsupported value " + v.dump());
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) joined += ',';
        joined += scalar(value[i]);
      }
      settings[key] = joined;
    } else {
      settings[key] = scalar(value);
    }
  }
  return resolve_manifest(settings);
}

bool same_resolution(const RunManifest& a, const RunManifest& b) {
  for (const KeySpec& spec : keys()) {
    if (spec.get(a) != spec.get(b)) return false;
  }
  return true;
}

}  // namespace horacle::cli
