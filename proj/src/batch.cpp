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

#include "horacle/batch.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "horacle/numfmt.hpp"

namespace horacle::cli {

namespace fs = std::filesystem;

namespace {

std::string na_or(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("NA");
}

nlohmann::json json_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

nlohmann::json thresholds_json(const rrc::RrcThresholds& t) {
  return {{"a1_dbm", t.a1_dbm},
          {"a2_dbm", t.a2_dbm},
          {"b2_dbm", t.b2_dbm},
          {"time_to_trigger_ms", t.time_to_trigger_ms}};
}

nlohmann::json algorithm_json(const sim::AlgorithmReport& a) {
  return {{"attempts", a.counters.attempts},
          {"executions", a.counters.executions},
          {"failures", a.counters.failures},
          {"success_rate_pct", json_or_null(a.success_rate_pct)}};
}

void write_summary_rows(std::ostream& out, const sim::SimConfig& cfg, const sim::RunReport& r) {
  auto row = [&](std::string_view name, const sim::AlgorithmReport& a) {
    out << r.seed << ',' << cfg.t_sim_ms << ',' << format_double(cfg.ppp.intensity) << ','
        << r.n_ues << ',' << name << ',' << a.counters.attempts << ',' << a.counters.executions
        << ',' << a.counters.failures << ',' << na_or(a.success_rate_pct) << '\n';
  };
  row("baseline", r.baseline);
  row("proposed", r.proposed);
}

void write_seed_dir(const fs::path& dir, const sim::RunReport& r) {
  fs::create_directories(dir);

  for (std::size_t ue = 0; ue < r.timelines.size(); ++ue) {
    auto out = open_out(dir / ("trace_" + std::to_string(ue) + ".csv"));
    out << "tick,x,y,distance,rsrp_lte,rsrp_mmwave,link_state,gap_state,"
           "baseline_decision,proposed_decision,label\n";
    for (const sim::TickRecord& t : r.timelines[ue]) {
      out << t.row.tick << ',' << format_double(t.row.x) << ',' << format_double(t.row.y) << ','
          << format_double(t.row.distance_m) << ',' << format_double(t.row.rsrp_lte_dbm) << ','
          << format_double(t.row.rsrp_mmwave_dbm) << ',' << channel::to_string(t.link) << ','
          << (t.gap_open_during_tick ? "open" : "closed") << ','
          << rrc::to_string(t.baseline_decision) << ',' << rrc::to_string(t.proposed_decision)
          << ',' << t.row.label << '\n';
    }
  }

  auto ues = open_out(dir / "ues.csv");
  ues << "ue,train_rows,test_rows,train_positives,test_positives,cv_auc,test_auc,gate_passed,"
         "objective,l1_alpha,l2_lambda,gamma,subsample,min_child_weight,max_depth\n";
  for (const sim::UeReport& u : r.ues) {
    ues << u.ue << ',' << u.train_rows << ',' << u.test_rows << ',' << u.train_positives << ','
        << u.test_positives << ',' << na_or(u.cv_auc) << ',' << na_or(u.test_auc) << ','
        << (u.gate_passed ? "true" : "false");
    if (u.chosen) {
      const gbdt::Hyperparameters& h = *u.chosen;
      ues << ',' << gbdt::to_string(h.objective) << ',' << format_double(h.l1_alpha) << ','
          << format_double(h.l2_lambda) << ',' << format_double(h.gamma) << ','
          << format_double(h.subsample) << ',' << format_double(h.min_child_weight) << ','
          << h.max_depth;
    } else {
      ues << ",NA,NA,NA,NA,NA,NA,NA";
    }
    ues << '\n';

    auto roc = open_out(dir / ("roc_" + std::to_string(u.ue) + ".csv"));
    roc << "threshold,false_positive_rate,true_positive_rate\n";
    for (const modelsel::RocPoint& p : u.roc) {
      roc << format_double(p.threshold) << ',' << format_double(p.false_positive_rate) << ','
          << format_double(p.true_positive_rate) << '\n';
    }
  }

  nlohmann::json run = {{"seed", r.seed},
                        {"n_ues", r.n_ues},
                        {"collection_period_ms", r.collection_period_ms},
                        {"thresholds", thresholds_json(r.thresholds)},
                        {"baseline", algorithm_json(r.baseline)},
                        {"proposed", algorithm_json(r.proposed)}};
  auto out = open_out(dir / "run.json");
  out << run.dump(2) << '\n';
}

}  // namespace

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw CalibrationError("percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile must be in [0, 100]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

rrc::RrcThresholds thresholds_from_samples(std::span<const double> lte_rsrp_dbm,
                                           std::span<const double> mm_rsrp_dbm,
                                           const CalibrationSpec& spec, int time_to_trigger_ms) {
  if (lte_rsrp_dbm.empty()) throw CalibrationError("calibration: no LTE RSRP samples");
  if (mm_rsrp_dbm.empty()) throw CalibrationError("calibration: no non-outage mmWave samples");
  rrc::RrcThresholds t;
  t.a2_dbm = percentile(lte_rsrp_dbm, spec.a2_percentile);
  t.a1_dbm = percentile(lte_rsrp_dbm, spec.a1_percentile);
  t.b2_dbm = percentile(mm_rsrp_dbm, spec.b2_percentile);
  t.time_to_trigger_ms = time_to_trigger_ms;
  if (!(t.a2_dbm < t.a1_dbm)) {
    throw CalibrationError("calibration: degenerate thresholds, A2 " + format_double(t.a2_dbm) +
                           " dBm is not below A1 " + format_double(t.a1_dbm) + " dBm");
  }
  return t;
}

rrc::RrcThresholds calibrate_thresholds(const sim::SimConfig& cfg, const CalibrationSpec& spec,
                                        std::uint64_t seed) {
  sim::SimConfig warm = cfg;
  warm.t_sim_ms = spec.warmup_ticks;
  const sim::EnvironmentTrace trace = sim::generate_trace(warm, seed);
  if (trace.num_ues() == 0) throw CalibrationError("calibration: the warm-up drew no users");
  std::vector<double> lte;
  std::vector<double> mm;
  for (std::size_t ue = 0; ue < trace.num_ues(); ++ue) {
    for (int t = 1; t <= trace.num_ticks(); ++t) {
      const sim::UeSample& s = trace.at(ue, t);
      lte.push_back(s.rsrp_lte_dbm);
      if (s.link != channel::LinkState::kOutage) mm.push_back(s.rsrp_mmwave_dbm);
    }
  }
  return thresholds_from_samples(lte, mm, spec, cfg.thresholds.time_to_trigger_ms);
}

sim::SimConfig effective_config(const RunManifest& m, std::uint64_t seed) {
  sim::SimConfig cfg = m.config;
  cfg.seed = seed;
  if (m.calibration != CalibrationMode::kManual) {
    cfg.lte.calibration_offset_db = 0.0;
    cfg.mmwave.calibration_offset_db = 0.0;
  }
  if (m.calibration == CalibrationMode::kPercentile) {
    cfg.thresholds = calibrate_thresholds(cfg, m.calibration_spec, seed);
  }
  return cfg;
}

int run_batch(const RunManifest& m, std::ostream& log) {
  try {
    fs::create_directories(m.out_dir);
    {
      auto out = open_out(m.out_dir / "manifest.json");
      out << manifest_to_json(m).dump(2) << '\n';
    }
    auto summary = open_out(m.out_dir / "summary.csv");
    summary << "seed,t_sim_ms,lambda,n_ues,algorithm,attempts,executions,failures,"
               "success_rate_pct\n";
    for (const std::uint64_t seed : m.seeds) {
      const sim::SimConfig cfg = effective_config(m, seed);
      const sim::RunReport report = sim::run_experiment(cfg);
      write_summary_rows(summary, cfg, report);
      summary.flush();
      write_seed_dir(m.out_dir / ("seed_" + std::to_string(seed)), report);
      log << "seed " << seed << ": " << report.n_ues << " UEs, baseline "
          << na_or(report.baseline.success_rate_pct) << "%, proposed "
          << na_or(report.proposed.success_rate_pct) << "%\n";
    }
    if (!summary) throw std::runtime_error("write failed: " + (m.out_dir / "summary.csv").string());
    return 0;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace horacle::cli
