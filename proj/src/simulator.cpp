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

#include "horacle/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "horacle/parallel.hpp"
#include "horacle/random.hpp"

namespace horacle::sim {

void SimConfig::validate() const {
  if (t_sim_ms < 1) throw std::invalid_argument("sim.t_sim_ms must be >= 1");
  if (t_coherence_ms < 1) throw std::invalid_argument("sim.t_coherence_ms must be >= 1");
  if (!(r_training > 0.0 && r_training < 1.0)) {
    throw std::invalid_argument("sim.r_training must be in (0, 1)");
  }
  ppp.validate();
  lte.validate();
  mmwave.validate();
  thresholds.validate();
  gate.validate();
  grid.validate();
}

EnvironmentTrace::EnvironmentTrace(std::size_t num_ues, int num_ticks,
                                   std::vector<UeSample> samples)
    : num_ues_(num_ues), num_ticks_(num_ticks), samples_(std::move(samples)) {
  if (samples_.size() != num_ues_ * static_cast<std::size_t>(num_ticks_)) {
    throw std::invalid_argument("EnvironmentTrace: sample count mismatch");
  }
}

const UeSample& EnvironmentTrace::at(std::size_t ue, int tick) const {
  return samples_[ue * static_cast<std::size_t>(num_ticks_) +
                  static_cast<std::size_t>(tick - 1)];
}

EnvironmentTrace generate_trace(const SimConfig& cfg, std::uint64_t seed) {
  Engine population = make_engine(seed, Stream::kPopulation);
  const std::size_t n = geometry::draw_user_count(cfg.ppp, population);
  const int ticks = cfg.t_sim_ms;

  std::vector<Engine> position_streams;
  std::vector<Engine> blockage_streams;
  position_streams.reserve(n);
  blockage_streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    position_streams.push_back(make_engine(seed, Stream::kPositions, i));
    blockage_streams.push_back(make_engine(seed, Stream::kBlockage, i));
  }

  std::vector<UeSample> samples(n * static_cast<std::size_t>(ticks));
  std::vector<geometry::UePosition> positions(n);
  for (int t = 1; t <= ticks; ++t) {
    geometry::resample_positions(positions, cfg.ppp.cell, position_streams);
    for (std::size_t i = 0; i < n; ++i) {
      UeSample& s = samples[i * static_cast<std::size_t>(ticks) +
                            static_cast<std::size_t>(t - 1)];
      s.position = positions[i];
      s.distance_m = geometry::distance_to_bs(positions[i]);
      s.rsrp_lte_dbm = channel::lte_rsrp(s.distance_m, cfg.lte);
      s.link = channel::draw_link_state(s.distance_m, cfg.mmwave, blockage_streams[i]);
      s.rsrp_mmwave_dbm = channel::mmwave_rsrp(s.distance_m, s.link, cfg.mmwave);
    }
  }
  return EnvironmentTrace(n, ticks, std::move(samples));
}

int collection_period(int t_sim_ms, int t_coherence_ms, double r_training) {
  const double window = r_training * static_cast<double>(t_sim_ms);
  // absorb representation error such as 0.7 * 40 = 28.000000000000004
  const int ceiled = static_cast<int>(std::ceil(window - 1e-9 * std::max(1.0, window)));
  return std::min(t_coherence_ms, ceiled);
}

int compute_label(bool gap_open_during_tick, double mm_rsrp_dbm, double b2_dbm) {
  return gap_open_during_tick && mm_rsrp_dbm > b2_dbm ? 1 : 0;
}

AccessOutcome resolve_access(rrc::RrcState& state, double mm_rsrp_at_access_dbm,
                             double b2_dbm, rrc::TickCounters& counters) {
  state.pending_execution = false;
  if (mm_rsrp_at_access_dbm <= b2_dbm) {
    ++counters.failures;
    state.gap_open = false;
    return AccessOutcome::kFailure;
  }
  state.gap_open = false;
  state.serving = rrc::ServingBand::kNr;
  return AccessOutcome::kSuccess;
}

std::optional<double> success_rate(std::uint64_t attempts, std::uint64_t failures) {
  if (attempts == 0) return std::nullopt;
  return 100.0 * (1.0 - static_cast<double>(failures) / static_cast<double>(attempts));
}

std::array<double, kNumFeatures> MeasurementRow::features() const {
  return {x, y, distance_m, rsrp_lte_dbm, rsrp_mmwave_dbm,
          gap_closed_event ? 1.0 : 0.0, gap_open_event ? 1.0 : 0.0};
}

namespace {

struct Counting {
  bool include_collection_region;
  int collection_period;

  bool operator()(int tick) const {
    return include_collection_region || tick > collection_period;
  }
};

// Measured handover over one UE's trace. Produces the UE-reported event
// stream and labels that the proposed pass replays.
std::vector<TickRecord> run_baseline(const SimConfig& cfg, const EnvironmentTrace& trace,
                                     std::size_t ue, Counting counted,
                                     rrc::TickCounters& counters) {
  std::vector<TickRecord> timeline;
  rrc::RrcState state;
  rrc::EventTrigger trigger(cfg.thresholds.time_to_trigger_ms);
  rrc::TickCounters discard;
  bool pending_counted = false;
  const double b2 = cfg.thresholds.b2_dbm;

  for (int t = 1; t <= trace.num_ticks(); ++t) {
    const UeSample& s = trace.at(ue, t);
    if (state.pending_execution) {
      const auto outcome =
          resolve_access(state, s.rsrp_mmwave_dbm, b2, pending_counted ? counters : discard);
      if (outcome == AccessOutcome::kSuccess) break;  // held on NR for the rest of the run
    }

    const rrc::EventSet events = trigger.apply(
        rrc::evaluate_events(s.rsrp_lte_dbm, s.rsrp_mmwave_dbm, cfg.thresholds, state));
    const bool gap_during = state.gap_open || events.a2;
    const bool count = counted(t);
    const rrc::Decision decision = rrc::step_baseline(state, events, count ? counters : discard);
    if (decision == rrc::Decision::kExecute) pending_counted = count;

    const geometry::Point xy = s.position.cartesian();
    TickRecord rec;
    rec.row = {t,
               xy.x,
               xy.y,
               s.distance_m,
               s.rsrp_lte_dbm,
               s.rsrp_mmwave_dbm,
               events.a1,
               events.a2,
               compute_label(gap_during, s.rsrp_mmwave_dbm, b2)};
    rec.events = events;
    rec.link = s.link;
    rec.gap_open_during_tick = gap_during;
    rec.baseline_decision = decision;
    timeline.push_back(rec);
  }
  return timeline;
}

struct UeModel {
  UeReport report;
  std::optional<gbdt::BoostedModel> model;
};

UeModel select_model(const SimConfig& cfg, std::size_t ue,
                     const std::vector<TickRecord>& timeline, int period) {
  UeModel out;
  out.report.ue = ue;
  gbdt::Dataset train(kNumFeatures);
  gbdt::Dataset test(kNumFeatures);
  for (const TickRecord& rec : timeline) {
    const auto f = rec.row.features();
    (rec.row.tick <= period ? train : test).add_row(f, rec.row.label);
  }
  out.report.train_rows = train.rows();
  out.report.test_rows = test.rows();
  const auto labels_train = train.labels();
  const auto labels_test = test.labels();
  out.report.train_positives =
      static_cast<std::size_t>(std::count(labels_train.begin(), labels_train.end(), 1));
  out.report.test_positives =
      static_cast<std::size_t>(std::count(labels_test.begin(), labels_test.end(), 1));

  const std::uint64_t ue_seed = derive_seed(cfg.seed, Stream::kFolds, ue);
  const auto selected = modelsel::grid_search(train, cfg.grid, ue_seed);
  if (!selected) return out;
  out.report.chosen = selected->best;
  out.report.cv_auc = selected->mean_cv_auc;

  // index past every cross-validation run of this UE
  Engine rng = make_engine(ue_seed, Stream::kSubsampling,
                           cfg.grid.size() * static_cast<std::size_t>(cfg.grid.folds));
  out.model = gbdt::train(train, selected->best, rng);

  if (!test.empty()) {
    const auto scores = gbdt::predict_all(*out.model, test);
    out.report.test_auc = modelsel::roc_auc(scores, test.labels());
    out.report.roc = modelsel::roc_curve(scores, test.labels());
  }
  out.report.gate_passed = !cfg.force_gate_off && modelsel::gate(out.report.test_auc, cfg.gate);
  return out;
}

// Partially blind handover replayed over the baseline's event stream. The
// UE stays in the replay for exactly the ticks it is LTE-served in the
// baseline, so both passes see the same A2 reports.
void run_proposed(const SimConfig& cfg, const EnvironmentTrace& trace, std::size_t ue,
                  std::vector<TickRecord>& timeline, const UeModel& selected,
                  int period, Counting counted, rrc::TickCounters& counters) {
  rrc::RrcState state;
  rrc::TickCounters discard;
  bool pending_counted = false;
  const double b2 = cfg.thresholds.b2_dbm;

  std::size_t next = 0;
  for (int t = 1; t <= trace.num_ticks(); ++t) {
    if (state.pending_execution) {
      resolve_access(state, trace.at(ue, t).rsrp_mmwave_dbm, b2,
                     pending_counted ? counters : discard);
      state.serving = rrc::ServingBand::kLte;
    }
    if (next >= timeline.size()) break;
    TickRecord& rec = timeline[next];
    if (rec.row.tick != t) continue;
    ++next;

    const bool gated = selected.report.gate_passed && t > period;
    bool predicted = false;
    if (gated && rec.events.a2) {
      const auto f = rec.row.features();
      predicted = gbdt::predict_class(*selected.model, f);
    }
    const bool count = counted(t);
    rec.proposed_decision =
        rrc::step_proposed(state, rec.events, predicted, gated, count ? counters : discard);
    if (rec.proposed_decision == rrc::Decision::kExecute) pending_counted = count;
  }
}

}  // namespace

RunReport run_experiment(const SimConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, generate_trace(cfg, cfg.seed));
}

RunReport run_experiment(const SimConfig& cfg, const EnvironmentTrace& trace) {
  cfg.validate();
  RunReport report;
  report.seed = cfg.seed;
  report.n_ues = trace.num_ues();
  report.thresholds = cfg.thresholds;
  const int period = collection_period(trace.num_ticks(), cfg.t_coherence_ms, cfg.r_training);
  report.collection_period_ms = period;
  const Counting counted{cfg.include_collection_region, period};

  const std::size_t n = trace.num_ues();
  report.timelines.resize(n);
  for (std::size_t ue = 0; ue < n; ++ue) {
    report.timelines[ue] = run_baseline(cfg, trace, ue, counted, report.baseline.counters);
  }

  std::vector<UeModel> models(n);
  parallel_for(n, resolve_threads(cfg.threads), [&](std::size_t ue) {
    models[ue] = select_model(cfg, ue, report.timelines[ue], period);
  });

  for (std::size_t ue = 0; ue < n; ++ue) {
    run_proposed(cfg, trace, ue, report.timelines[ue], models[ue], period, counted,
                 report.proposed.counters);
    report.ues.push_back(std::move(models[ue].report));
  }

  auto finish = [](AlgorithmReport& a) {
    a.success_rate_pct = success_rate(a.counters.attempts, a.counters.failures);
  };
  finish(report.baseline);
  finish(report.proposed);
  return report;
}

}  // namespace horacle::sim
