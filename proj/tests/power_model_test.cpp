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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gvn/power_model.hpp"
#include "gvn/switch_sim.hpp"
#include "model_oracle.hpp"
#include "test_circuits.hpp"

namespace {

using gvn::ChannelGeometry;
using gvn::LogicLevel;
using gvn::ProcessParams;
using gvn_oracle::Real;

double rel_err(double got, const Real& want) {
  return static_cast<double>(abs((Real(got) - want) / want));
}

// Values computed once with an independent 50-digit evaluation.
constexpr double kThermalVoltage300 = 0.025851999786435532301;
constexpr double kPrefactorExample = 1.9407053009923453217e-6;  // mu0 .02, Cox .012, W/L 2
constexpr double kDecadeRatio = 0.075866367798803894009;        // dVth = 0.1 V, n' 1.5
constexpr double kCurrentOverPrefactor = 4.3666449035619292901e-4;  // Vth .3, Vgs 0, Vds 1
constexpr double kDelayExample = 1.4285714285714285714e-12;

TEST(PowerModel, ThermalVoltageAt300K) {
  EXPECT_NEAR(ProcessParams{}.thermal_voltage(), kThermalVoltage300, kThermalVoltage300 * 1e-12);
}

TEST(PowerModel, PrefactorFrozenValue) {
  ProcessParams pp;
  pp.mu0_m2_per_Vs = 0.02;
  pp.cox_F_per_m2 = 0.012;
  ChannelGeometry g{90e-9, 45e-9};
  EXPECT_NEAR(gvn::leakage_prefactor(g, pp), kPrefactorExample, kPrefactorExample * 1e-12);
}

TEST(PowerModel, CurrentOverPrefactorFrozenValue) {
  ProcessParams pp;
  ChannelGeometry g;
  double ratio = gvn::subthreshold_current(g, 0.3, 0.0, 1.0, pp) / gvn::leakage_prefactor(g, pp);
  EXPECT_NEAR(ratio, kCurrentOverPrefactor, kCurrentOverPrefactor * 1e-12);
}

TEST(PowerModel, GateDelayFrozenValue) {
  EXPECT_NEAR(gvn::gate_delay(1e-15, 1.0, 1e-3, 0.3, 1.0), kDelayExample, kDelayExample * 1e-12);
}

TEST(PowerModel, MatchesExtendedPrecisionOnRandomDraws) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ProcessParams pp;
    pp.temperature_K = 250 + 150 * u(rng);
    pp.n_prime = 1.0 + u(rng);
    pp.mu0_m2_per_Vs = 0.005 + 0.05 * u(rng);
    pp.cox_F_per_m2 = 0.005 + 0.05 * u(rng);
    pp.gamma = 0.5 + u(rng);
    ChannelGeometry g{(45 + 900 * u(rng)) * 1e-9, (45 + 200 * u(rng)) * 1e-9};
    double vth = 0.1 + 0.5 * u(rng);
    double vgs = vth * u(rng) * 0.99;
    double vds = 0.01 + 1.2 * u(rng);

    gvn_oracle::Physics ph;
    ph.temperature_K = Real(pp.temperature_K);
    ph.n_prime = Real(pp.n_prime);
    ph.mu0 = Real(pp.mu0_m2_per_Vs);
    ph.cox = Real(pp.cox_F_per_m2);
    ph.gamma = Real(pp.gamma);

    ASSERT_LE(rel_err(gvn::leakage_prefactor(g, pp),
                      gvn_oracle::prefactor(ph, Real(g.width_m), Real(g.length_m))),
              1e-12);
    ASSERT_LE(rel_err(gvn::subthreshold_current(g, vth, vgs, vds, pp),
                      gvn_oracle::subthreshold(ph, Real(g.width_m), Real(g.length_m), Real(vth),
                                               Real(vgs), Real(vds))),
              1e-12);

    double cl = (0.1 + 10 * u(rng)) * 1e-15;
    double vdd = 0.8 + 0.6 * u(rng);
    double k = (1 + 100 * u(rng)) * 1e-5;
    double dvth = 0.1 + 0.5 * u(rng) * (vdd - 0.2);
    double alpha = 1.0 + u(rng);
    ASSERT_LE(rel_err(gvn::gate_delay(cl, vdd, k, dvth, alpha),
                      gvn_oracle::delay(Real(cl), Real(vdd), Real(k), Real(dvth), Real(alpha))),
              1e-12);
  }
}

TEST(PowerModel, LeakageDecreasesWithThreshold) {
  ProcessParams pp;
  ChannelGeometry g;
  double prev = gvn::subthreshold_current(g, 0.10, 0.0, 1.0, pp);
  for (double vth = 0.15; vth < 0.7; vth += 0.05) {
    double cur = gvn::subthreshold_current(g, vth, 0.0, 1.0, pp);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  double r = gvn::subthreshold_current(g, 0.4, 0.0, 1.0, pp) /
             gvn::subthreshold_current(g, 0.3, 0.0, 1.0, pp);
  EXPECT_NEAR(r, kDecadeRatio, kDecadeRatio * 1e-9);
}

TEST(PowerModel, ConductingDeviceHasNoSubthresholdCurrent) {
  ProcessParams pp;
  EXPECT_EQ(gvn::subthreshold_current(ChannelGeometry{}, 0.3, 0.5, 1.0, pp), 0.0);
}

TEST(PowerModel, PmosVoltagesAreMirrored) {
  ProcessParams pp;
  gvn::Transistor n, p;
  p.device_type = gvn::DeviceType::PMOS;
  // NMOS with gate and source at 0; PMOS with gate and source at vdd.
  EXPECT_DOUBLE_EQ(gvn::subthreshold_current(n, 0.0, 0.0, 1.0, pp),
                   gvn::subthreshold_current(p, 1.0, 1.0, 1.0, pp));
}

TEST(PowerModel, GateDelayIncreasesWithThresholdAndIsLinearInLoad) {
  double prev = 0;
  for (double vth = 0.1; vth < 0.9; vth += 0.1) {
    double d = gvn::gate_delay(1e-15, 1.0, 1e-4, vth, 1.3);
    EXPECT_GT(d, prev);
    prev = d;
  }
  double d1 = gvn::gate_delay(1e-15, 1.0, 1e-4, 0.3, 1.3);
  EXPECT_DOUBLE_EQ(gvn::gate_delay(3e-15, 1.0, 1e-4, 0.3, 1.3), 3 * d1);
  EXPECT_EQ(gvn::gate_delay(0.0, 1.0, 1e-4, 0.3, 1.3), 0.0);
}

TEST(PowerModel, GateDelayRejectsBadArguments) {
  EXPECT_THROW(gvn::gate_delay(1e-15, 1.0, 1e-4, 1.0, 1.3), gvn::ModelError);
  EXPECT_THROW(gvn::gate_delay(-1e-15, 1.0, 1e-4, 0.3, 1.3), gvn::ModelError);
}

TEST(PowerModel, AveragePowerAddsSwitchingAndLeakage) {
  ProcessParams pp;
  gvn::PowerTrace t;
  t.duration_s = 1e-9;
  t.switching_events.push_back({0.0, gvn::NetId{3}, 2e-15});
  t.leakage_intervals.push_back({0.0, 1e-9, 1e-6});
  double want = (0.5 * 2e-15 * 1.0 + 1e-6 * 1e-9) / 1e-9;
  EXPECT_NEAR(gvn::average_power(t, pp), want, want * 1e-12);
  t.duration_s = 0;
  EXPECT_THROW(gvn::average_power(t, pp), gvn::ModelError);
}

// --- State leakage ---------------------------------------------------------

std::vector<LogicLevel> settled(const gvn::Netlist& nl, const ProcessParams& pp,
                                std::vector<std::pair<gvn::NetId, LogicLevel>> in) {
  gvn::SimState s(nl, pp);
  s.apply_inputs(in, 0.0);
  s.settle();
  return {s.values().begin(), s.values().end()};
}

TEST(StateLeakage, InverterLeaksThroughItsOffDevice) {
  ProcessParams pp;
  auto nl = gvn_test::inverter_netlist();
  auto a = nl.net_id("a");
  ChannelGeometry g;
  double i_off = gvn::subthreshold_current(g, pp.vth_low_V, 0.0, pp.vdd_V, pp);
  for (auto v : {LogicLevel::L0, LogicLevel::L1}) {
    auto vals = settled(nl, pp, {{a, v}});
    EXPECT_NEAR(gvn::state_leakage(nl, vals, pp), pp.vdd_V * i_off, pp.vdd_V * i_off * 1e-12);
  }
}

TEST(StateLeakage, SeriesOffDevicesAreAttenuated) {
  ProcessParams pp;
  gvn_test::Circuit c;
  auto a = c.in("a");
  auto m = c.sig("m");
  c.nmos("n1", a, c.vdd, m);
  c.nmos("n2", a, m, c.gnd);
  auto vals = settled(c.nl, pp, {{a, LogicLevel::L0}});
  double i_off = gvn::subthreshold_current(ChannelGeometry{}, pp.vth_low_V, 0.0, pp.vdd_V, pp);
  double want = pp.vdd_V * i_off * pp.stack_factor;
  EXPECT_NEAR(gvn::state_leakage(c.nl, vals, pp), want, want * 1e-12);
}

TEST(StateLeakage, HighThresholdSleepDeviceBoundsTheStack) {
  ProcessParams pp;
  gvn_test::Circuit c;
  auto a = c.in("a");
  auto sl = c.clock("sl");
  auto y = c.out("y");
  auto vg = c.net("vgnd", gvn::NetKind::VirtualGnd);
  c.pmos("p", a, c.vdd, y);
  c.nmos("n", a, vg, y);
  c.nmos("sleep", sl, c.gnd, vg, gvn::VthClass::High).is_sleep = true;
  auto vals = settled(c.nl, pp, {{a, LogicLevel::L1}, {sl, LogicLevel::L0}});
  double leak = gvn::state_leakage(c.nl, vals, pp);
  double sleep_alone = pp.vdd_V * gvn::subthreshold_current(ChannelGeometry{}, pp.vth_high_V, 0.0,
                                                            pp.vdd_V, pp);
  EXPECT_GT(leak, 0.0);
  EXPECT_LE(leak, sleep_alone);
}

TEST(StateLeakage, UnknownGateTakesTheWorstCase) {
  ProcessParams pp;
  gvn_test::Circuit c;
  auto a = c.in("a");
  auto b = c.in("b");
  auto m = c.sig("m");
  c.nmos("n1", a, c.vdd, m, gvn::VthClass::High);
  c.nmos("n2", b, m, c.gnd, gvn::VthClass::Low);
  auto vals = settled(c.nl, pp, {{a, LogicLevel::L0}, {b, LogicLevel::L0}});
  double both_off = gvn::state_leakage(c.nl, vals, pp);
  vals[a.value] = LogicLevel::LX;
  double unknown = gvn::state_leakage(c.nl, vals, pp);
  // The unknown device is OFF at the path's lowest threshold, so both devices
  // now leak like low-threshold devices.
  double i_low = gvn::subthreshold_current(ChannelGeometry{}, pp.vth_low_V, 0.0, pp.vdd_V, pp);
  EXPECT_NEAR(unknown, pp.vdd_V * i_low * pp.stack_factor, pp.vdd_V * i_low * 1e-12);
  EXPECT_GT(unknown, both_off);
}

TEST(StateLeakage, OnlyRailToRailPathsCount) {
  ProcessParams pp;
  gvn_test::Circuit c;
  auto a = c.in("a");
  auto b = c.in("b");
  c.nmos("n", a, c.vdd, b);  // off device between vdd and an input held at 0
  auto vals = settled(c.nl, pp, {{a, LogicLevel::L0}, {b, LogicLevel::L0}});
  EXPECT_EQ(gvn::state_leakage(c.nl, vals, pp), 0.0);
}

TEST(StateLeakage, RejectsWrongValueCount) {
  ProcessParams pp;
  auto nl = gvn_test::inverter_netlist();
  std::vector<LogicLevel> vals(1, LogicLevel::L0);
  EXPECT_THROW(gvn::state_leakage(nl, vals, pp), gvn::ModelError);
}

}  // namespace
