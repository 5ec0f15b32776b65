// Copyright 2026 The gvn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Clock-gated power gating: CLK1 wakes cluster 1 (first adder), CLK2 wakes
// cluster 2 (carry detect and correction adder). CLK2 is CLK1 delayed by the
// stage-1 settle time, and outputs are sampled once stage 2 has settled:
//
//   cycle start      clk1 rises, new operands applied
//   + clk2_offset    clk2 rises (stage-1 results valid)
//   + sample_offset  outputs sampled
//   + duty * period  each clock falls, its cluster sleeps
//
// Both clusters stay awake for (1 + guard) * (stage1 + stage2), so cluster 1
// keeps driving stage 2 until the sample point.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gvn/bcd_vectors.hpp"
#include "gvn/netlist.hpp"
#include "gvn/process_params.hpp"
#include "gvn/switch_sim.hpp"

namespace gvn {

class TimingInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Event times produced by the scheduler are multiples of this.
inline constexpr double kTimeResolution_s = 1e-12;

// Smallest multiple of kTimeResolution_s not below t_s.
inline double round_up_to_resolution(double t_s) {
  double ticks = t_s / kTimeResolution_s;
  double r = std::round(ticks);
  // Absorb representation error so exact multiples stay put.
  if (std::abs(ticks - r) < 1e-6) return r * kTimeResolution_s;
  return std::ceil(ticks) * kTimeResolution_s;
}

struct ClockConfig {
  double frequency_Hz = 0;
  double duty = 1;
  double clk2_offset_s = 0;
  double sample_offset_s = 0;

  double period_s() const { return 1.0 / frequency_Hz; }
  friend bool operator==(const ClockConfig&, const ClockConfig&) = default;
};

inline ClockConfig derive_clock_config(double freq_Hz, double stage1_worst_delay_s,
                                       double stage2_worst_delay_s, double guard = 0.1) {
  if (!(freq_Hz > 0)) throw std::invalid_argument("derive_clock_config: frequency must be > 0");
  if (stage1_worst_delay_s < 0 || stage2_worst_delay_s < 0)
    throw std::invalid_argument("derive_clock_config: negative stage delay");
  if (guard < 0) throw std::invalid_argument("derive_clock_config: negative guard");
  double period = 1.0 / freq_Hz;
  double s1 = round_up_to_resolution(stage1_worst_delay_s);
  double s2 = round_up_to_resolution(stage2_worst_delay_s);
  if (period < stage1_worst_delay_s + stage2_worst_delay_s || !(s1 + s2 < period)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "timing infeasible: period %.5e s is shorter than stage delays %.5e + %.5e s",
                  period, stage1_worst_delay_s, stage2_worst_delay_s);
    throw TimingInfeasible(buf);
  }
  ClockConfig cfg;
  cfg.frequency_Hz = freq_Hz;
  cfg.clk2_offset_s = s1;
  cfg.sample_offset_s = s2;
  double awake = round_up_to_resolution((1.0 + guard) * (s1 + s2));
  cfg.duty = std::min(1.0, awake / period);
  return cfg;
}

struct ClockWaveforms {
  std::vector<Event> clk1;
  std::vector<Event> clk2;
};

// Rising edge of clk1 at k * period, of clk2 clk2_offset_s later; both fall
// duty * period after rising. A duty of 1 holds the clocks high.
inline ClockWaveforms clock_waveforms(const ClockConfig& cfg, int n_cycles, NetId clk1 = {},
                                      NetId clk2 = {}) {
  if (n_cycles < 1) throw std::invalid_argument("clock_waveforms: n_cycles must be >= 1");
  ClockWaveforms w;
  double period = cfg.period_s();
  double high = cfg.duty * period;
  for (int k = 0; k < n_cycles; ++k) {
    double rise = k * period;
    w.clk1.push_back({rise, clk1, LogicLevel::L1});
    if (cfg.duty < 1.0) w.clk1.push_back({rise + high, clk1, LogicLevel::L0});
    w.clk2.push_back({rise + cfg.clk2_offset_s, clk2, LogicLevel::L1});
    if (cfg.duty < 1.0) w.clk2.push_back({rise + cfg.clk2_offset_s + high, clk2, LogicLevel::L0});
  }
  if (cfg.duty >= 1.0) {
    // Held high: one rising edge each, no further transitions.
    w.clk1.resize(1);
    w.clk2.resize(1);
  }
  return w;
}

inline std::vector<double> output_sample_times(const ClockConfig& cfg, int n_cycles) {
  std::vector<double> t;
  for (int k = 0; k < n_cycles; ++k)
    t.push_back(k * cfg.period_s() + cfg.clk2_offset_s + cfg.sample_offset_s);
  return t;
}

// ---------------------------------------------------------------------------
// Stage-delay characterization

struct StageDelays {
  double stage1_s = 0;
  double stage2_s = 0;
};

namespace gating_detail {

inline std::vector<NetId> cluster_nets(const Netlist& nl, const std::string& tag) {
  std::vector<NetId> out;
  for (const auto& [id, t] : nl.cluster_of)
    if (t == tag) out.push_back(id);
  return out;
}

}  // namespace gating_detail

// Worst stage settle times of a gated adder woken from sleep, as the clock
// scheme exercises it. For every legal vector and each of several
// predecessors (the two extreme operands and the previous vector in
// enumeration order): hold the predecessor, put both clusters to sleep,
// then raise CLK1 together with the new operands and measure how long
// cluster 1 takes to settle; then raise CLK2 and measure the outputs.
inline StageDelays characterize_stage_delays(const Netlist& gated, const ProcessParams& pp) {
  if (gated.clock_ports.size() != 2)
    throw std::invalid_argument("characterize_stage_delays: netlist is not clock gated");
  const NetId clk1 = gated.net_id("clk1"), clk2 = gated.net_id("clk2");
  const auto stage1 = gating_detail::cluster_nets(gated, "1");
  const auto vectors = legal_vectors();

  StageDelays worst;
  auto run_pair = [&](const BcdVector& before, const BcdVector& after) {
    SimState s(gated, pp);
    std::vector<std::pair<NetId, LogicLevel>> in = vector_assignments(gated, before);
    in.push_back({clk1, LogicLevel::L1});
    in.push_back({clk2, LogicLevel::L1});
    s.apply_inputs(in, 0.0);
    s.settle();
    double t = s.now();
    s.apply_inputs(std::vector<std::pair<NetId, LogicLevel>>{{clk1, LogicLevel::L0},
                                                             {clk2, LogicLevel::L0}},
                   t);
    s.settle();
    double t0 = s.now();
    in = vector_assignments(gated, after);
    in.push_back({clk1, LogicLevel::L1});
    s.apply_inputs(in, t0);
    s.settle();
    double d1 = 0;
    for (NetId n : stage1) {
      double lt = s.last_transition(n);
      if (lt >= t0) d1 = std::max(d1, lt - t0);
    }
    double t1 = s.now();
    s.apply_inputs(std::vector<std::pair<NetId, LogicLevel>>{{clk2, LogicLevel::L1}}, t1);
    s.settle();
    worst.stage1_s = std::max(worst.stage1_s, d1);
    worst.stage2_s = std::max(worst.stage2_s, s.measure_delay(t1));
  };
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    run_pair(BcdVector{0, 0, 0}, vectors[i]);
    run_pair(BcdVector{9, 9, 1}, vectors[i]);
    run_pair(vectors[(i + vectors.size() - 1) % vectors.size()], vectors[i]);
  }
  return worst;
}

}  // namespace gvn
