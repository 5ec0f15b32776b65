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


#include <algorithm>

#include <gtest/gtest.h>

#include "gvn/bench.hpp"
#include "gvn/gating.hpp"

namespace {

using gvn::ClockConfig;
using gvn::LogicLevel;

TEST(Gating, RoundsUpToSimulatorResolution) {
  EXPECT_DOUBLE_EQ(gvn::round_up_to_resolution(1.2e-12), 2e-12);
  EXPECT_DOUBLE_EQ(gvn::round_up_to_resolution(3e-12), 3e-12);
  EXPECT_DOUBLE_EQ(gvn::round_up_to_resolution(0.0), 0.0);
  EXPECT_DOUBLE_EQ(gvn::round_up_to_resolution(80.01e-12), 81e-12);
  EXPECT_DOUBLE_EQ(gvn::round_up_to_resolution(3 * (1e-12 / 3) * 80), 80e-12);
}

TEST(Gating, OffsetsAreRoundedStageDelays) {
  auto cfg = gvn::derive_clock_config(200e6, 49.3e-12, 80.2e-12);
  EXPECT_DOUBLE_EQ(cfg.clk2_offset_s, 50e-12);
  EXPECT_DOUBLE_EQ(cfg.sample_offset_s, 81e-12);
  EXPECT_DOUBLE_EQ(cfg.period_s(), 5e-9);
  EXPECT_LT(cfg.clk2_offset_s + cfg.sample_offset_s, cfg.period_s());
}

TEST(Gating, AwakeWindowIsGuardedActiveWindow) {
  // Period twice the active window: each cluster is awake a little over
  // half the cycle.
  double s1 = 100e-12, s2 = 150e-12;
  double f = 1.0 / (2 * (s1 + s2));
  auto cfg = gvn::derive_clock_config(f, s1, s2);
  EXPECT_NEAR(cfg.duty, 0.55, 1e-9);
  auto tight = gvn::derive_clock_config(f, s1, s2, 0.0);
  EXPECT_NEAR(tight.duty, 0.5, 1e-9);
  // At the default operating point the clusters sleep most of the cycle.
  auto at200 = gvn::derive_clock_config(200e6, 160e-12, 0.0);
  EXPECT_LT(at200.duty, 0.05);
}

TEST(Gating, InfeasibleTimingIsAnError) {
  EXPECT_THROW(gvn::derive_clock_config(5e9, 150e-12, 100e-12), gvn::TimingInfeasible);
  EXPECT_THROW(gvn::derive_clock_config(0, 1e-12, 1e-12), std::invalid_argument);
  EXPECT_THROW(gvn::derive_clock_config(1e6, -1e-12, 1e-12), std::invalid_argument);
  EXPECT_THROW(gvn::derive_clock_config(4e9, 150e-12, 100e-12), gvn::TimingInfeasible);
  EXPECT_NO_THROW(gvn::derive_clock_config(3.9e9, 150e-12, 100e-12));
}

TEST(Gating, SleepFractionGrowsAsFrequencyFalls) {
  double prev = -1;
  for (double f : {1e9, 500e6, 200e6, 100e6, 50e6}) {
    double sleep = 1 - gvn::derive_clock_config(f, 60e-12, 90e-12).duty;
    EXPECT_GE(sleep, 0.0);
    EXPECT_GT(sleep, prev);
    prev = sleep;
  }
}

TEST(Gating, OneCycleHasTwoTransitionsPerClock) {
  auto cfg = gvn::derive_clock_config(100e6, 50e-12, 80e-12);
  auto w = gvn::clock_waveforms(cfg, 1);
  ASSERT_EQ(w.clk1.size(), 2u);
  ASSERT_EQ(w.clk2.size(), 2u);
  EXPECT_EQ(w.clk1[0].new_value, LogicLevel::L1);
  EXPECT_EQ(w.clk1[1].new_value, LogicLevel::L0);
}

TEST(Gating, Clk2IsClk1DelayedByTheStageOneOffset) {
  auto cfg = gvn::derive_clock_config(100e6, 50e-12, 80e-12);
  auto w = gvn::clock_waveforms(cfg, 3);
  ASSERT_EQ(w.clk1.size(), w.clk2.size());
  for (std::size_t i = 0; i < w.clk1.size(); ++i) {
    EXPECT_EQ(w.clk1[i].new_value, w.clk2[i].new_value);
    EXPECT_NEAR(w.clk2[i].time_s - w.clk1[i].time_s, cfg.clk2_offset_s, 1e-21);
  }
  auto by_time = [](const gvn::Event& a, const gvn::Event& b) { return a.time_s < b.time_s; };
  EXPECT_TRUE(std::is_sorted(w.clk1.begin(), w.clk1.end(), by_time));
  EXPECT_TRUE(std::is_sorted(w.clk2.begin(), w.clk2.end(), by_time));
  EXPECT_LT(w.clk2.back().time_s, 30e-9);
  EXPECT_THROW(gvn::clock_waveforms(cfg, 0), std::invalid_argument);
}

TEST(Gating, WaveformsAreDeterministic) {
  auto cfg = gvn::derive_clock_config(50e6, 50e-12, 80e-12);
  auto a = gvn::clock_waveforms(cfg, 5);
  auto b = gvn::clock_waveforms(cfg, 5);
  EXPECT_EQ(a.clk1, b.clk1);
  EXPECT_EQ(a.clk2, b.clk2);
}

TEST(Gating, SampleTimesFollowStageTwo) {
  auto cfg = gvn::derive_clock_config(200e6, 50e-12, 80e-12);
  auto t = gvn::output_sample_times(cfg, 4);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_LT(t[0], cfg.period_s());
  EXPECT_GE(t[0], cfg.clk2_offset_s + 80e-12);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_NEAR(t[i] - t[i - 1], cfg.period_s(), 1e-18);
  // Both clusters are still awake at the sample instant.
  EXPECT_LE(t[0], cfg.duty * cfg.period_s());
}

TEST(Gating, CharacterizesBothStages) {
  gvn::ProcessParams pp;
  auto sd = gvn::characterize_stage_delays(gvn::bcd_gated(), pp);
  EXPECT_GT(sd.stage1_s, 0.0);
  EXPECT_GT(sd.stage2_s, 0.0);
  EXPECT_LT(sd.stage1_s + sd.stage2_s, 1e-9);
  EXPECT_THROW(gvn::characterize_stage_delays(gvn::bcd_dvt(), pp), std::invalid_argument);
}

TEST(Gating, SleepRetainsOutputsQuietly) {
  auto nl = gvn::bcd_gated();
  gvn::SimState s(nl, gvn::ProcessParams{});
  s.apply_inputs(gvn::bench_detail::with_clocks(nl, gvn::vector_assignments(nl, {7, 8, 1}),
                                                LogicLevel::L1),
                 0.0);
  s.settle();
  auto before = gvn::decode_outputs(nl, s.values());
  ASSERT_TRUE(before);
  EXPECT_EQ(*before, gvn::bcd_add_oracle(7, 8, 1));
  s.apply_inputs(gvn::bench_detail::with_clocks(nl, {}, LogicLevel::L0), s.now());
  auto ev = s.settle();
  for (const auto& e : ev) {
    auto kind = nl.net(e.net).kind;
    EXPECT_TRUE(kind == gvn::NetKind::Clock || kind == gvn::NetKind::VirtualGnd)
        << nl.net(e.net).name;
  }
  EXPECT_EQ(gvn::decode_outputs(nl, s.values()), before);
}

TEST(Gating, ClocksHighMakesGatedEquivalentToDvt) {
  auto gated = gvn::bcd_gated();
  auto dvt = gvn::bcd_dvt();
  for (const auto& v : gvn::legal_vectors()) {
    gvn::SimState g(gated, gvn::ProcessParams{});
    g.apply_inputs(gvn::bench_detail::with_clocks(gated, gvn::vector_assignments(gated, v),
                                                  LogicLevel::L1),
                   0.0);
    g.settle();
    gvn::SimState d(dvt, gvn::ProcessParams{});
    d.apply_inputs(gvn::vector_assignments(dvt, v), 0.0);
    d.settle();
    auto og = gvn::decode_outputs(gated, g.values());
    ASSERT_TRUE(og) << v.a << '+' << v.b << '+' << v.cin;
    ASSERT_EQ(og, gvn::decode_outputs(dvt, d.values())) << v.a << '+' << v.b << '+' << v.cin;
  }
}

TEST(Gating, GatedAdderIsCorrectAtTheSampleInstants) {
  auto r = gvn::verify_variant(gvn::Variant::Gated, gvn::ProcessParams{}, 200e6);
  EXPECT_TRUE(r.passed()) << r.counterexamples.size() << " counterexamples";
  EXPECT_EQ(r.matched, 200);
  ASSERT_TRUE(r.clock);
  EXPECT_LT(r.clock->duty, 0.1);
}

}  // namespace
