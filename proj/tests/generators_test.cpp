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


#include <string>

#include <gtest/gtest.h>

#include "gvn/generators.hpp"
#include "gvn/power_model.hpp"
#include "gvn/switch_sim.hpp"

namespace {

using gvn::LogicLevel;
using gvn::NetId;
using gvn::VthClass;

using Assign = std::vector<std::pair<NetId, LogicLevel>>;

TEST(Generators, DeviceCounts) {
  EXPECT_EQ(gvn::full_adder_16t().devices.size(), 16u);
  EXPECT_EQ(gvn::rca4().devices.size(), 64u);
  EXPECT_EQ(gvn::carry_detect().devices.size(), 20u);
  EXPECT_EQ(gvn::bcd_conventional().devices.size(), 148u);
  EXPECT_EQ(gvn::bcd_dvt().devices.size(), 148u);
  EXPECT_EQ(gvn::bcd_gated().devices.size(), 150u);
}

TEST(Generators, GeneratedNetlistsValidate) {
  for (auto v : {gvn::Variant::Conventional, gvn::Variant::Dvt, gvn::Variant::Gated}) {
    auto r = gvn::validate(gvn::generate(v));
    EXPECT_TRUE(r.findings.empty()) << gvn::to_string(v);
  }
}

TEST(Generators, RippleCarryAdderTruthTable) {
  auto nl = gvn::rca4();
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      for (int c = 0; c < 2; ++c) {
        gvn::SimState s(nl, gvn::ProcessParams{});
        Assign in;
        for (int i = 0; i < 4; ++i) {
          in.push_back({nl.net_id("a" + std::to_string(i)), gvn::from_bool(a >> i & 1)});
          in.push_back({nl.net_id("b" + std::to_string(i)), gvn::from_bool(b >> i & 1)});
        }
        in.push_back({nl.net_id("cin"), gvn::from_bool(c)});
        s.apply_inputs(in, 0.0);
        s.settle();
        int sum = a + b + c;
        for (int i = 0; i < 4; ++i)
          ASSERT_EQ(s.value("s" + std::to_string(i)), gvn::from_bool(sum >> i & 1))
              << a << '+' << b << '+' << c;
        ASSERT_EQ(s.value("cout"), gvn::from_bool(sum >= 16)) << a << '+' << b << '+' << c;
      }
    }
  }
}

TEST(Generators, CarryDetectTruthTable) {
  auto nl = gvn::carry_detect();
  for (int v = 0; v < 16; ++v) {
    bool k = v & 1, z8 = v & 2, z4 = v & 4, z2 = v & 8;
    gvn::SimState s(nl, gvn::ProcessParams{});
    s.apply_inputs(Assign{{nl.net_id("k"), gvn::from_bool(k)},
                          {nl.net_id("z8"), gvn::from_bool(z8)},
                          {nl.net_id("z4"), gvn::from_bool(z4)},
                          {nl.net_id("z2"), gvn::from_bool(z2)}},
                   0.0);
    s.settle();
    EXPECT_EQ(s.value("c"), gvn::from_bool(k || (z8 && z4) || (z8 && z2))) << v;
  }
}

TEST(Generators, ConventionalIsAllLowThreshold) {
  for (const auto& d : gvn::bcd_conventional().devices) EXPECT_EQ(d.vth_class, VthClass::Low);
}

TEST(Generators, DvtKeepsOnlyTheCarryPathFast) {
  auto nl = gvn::bcd_dvt();
  auto critical = gvn::critical_gates(nl);
  EXPECT_FALSE(critical.empty());
  int low = 0, high = 0;
  for (const auto& d : nl.devices) {
    bool crit = critical.count(std::string(gvn::gate_of(d.name))) > 0;
    EXPECT_EQ(d.vth_class, crit ? VthClass::Low : VthClass::High) << d.name;
    (crit ? low : high)++;
  }
  EXPECT_GT(low, 0);
  EXPECT_GT(high, low);
  EXPECT_TRUE(critical.count("cd/or_inv"));
  EXPECT_TRUE(critical.count("s1/fa3/cout_mux"));
}

TEST(Generators, VthOverridesApplyAndAreChecked) {
  gvn::VthAssignment a;
  a.policy = gvn::VthAssignment::Policy::AllLow;
  a.overrides["inv_h"] = VthClass::High;
  auto fa = gvn::full_adder_16t(a);
  for (const auto& d : fa.devices)
    EXPECT_EQ(d.vth_class, gvn::gate_of(d.name) == "inv_h" ? VthClass::High : VthClass::Low);
  a.overrides["nope"] = VthClass::High;
  EXPECT_THROW(gvn::full_adder_16t(a), gvn::GeneratorError);
}

TEST(Generators, GatedAddsTwoHighThresholdFooters) {
  auto nl = gvn::bcd_gated();
  auto sizing = gvn::default_gated_sizing();
  int sleep = 0;
  for (const auto& d : nl.devices) {
    if (!d.is_sleep) continue;
    ++sleep;
    EXPECT_EQ(d.device_type, gvn::DeviceType::NMOS);
    EXPECT_EQ(d.vth_class, VthClass::High);
    EXPECT_EQ(nl.net(d.source).kind, gvn::NetKind::RailGnd);
    EXPECT_EQ(nl.net(d.drain).kind, gvn::NetKind::VirtualGnd);
    EXPECT_DOUBLE_EQ(d.geometry.width_m, 90e-9 * sizing.sleep_width_multiplier);
    EXPECT_DOUBLE_EQ(d.geometry.length_m, 45e-9 * sizing.sleep_length_multiplier);
  }
  EXPECT_EQ(sleep, 2);
  int on_clk1 = 0;
  for (const auto& d : nl.devices) on_clk1 += d.gate == nl.net_id("clk1");
  EXPECT_EQ(on_clk1, 1);
  EXPECT_EQ(nl.clock_ports.size(), 2u);
}

TEST(Generators, GatedPartitionsIntoTwoClusters) {
  auto nl = gvn::bcd_gated();
  for (const auto& n : nl.nets) {
    bool tagged = nl.cluster_of.count(n.id) > 0;
    bool external = n.kind == gvn::NetKind::RailVdd || n.kind == gvn::NetKind::RailGnd ||
                    n.kind == gvn::NetKind::Input || n.kind == gvn::NetKind::Clock;
    EXPECT_EQ(tagged, !external) << n.name;
  }
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("z3")), "1");
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("k")), "1");
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("vgnd1")), "1");
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("carry")), "2");
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("digit0")), "2");
  EXPECT_EQ(nl.cluster_of.at(nl.net_id("vgnd2")), "2");
  // Every pull-down of a cluster ends on that cluster's virtual ground.
  for (const auto& d : nl.devices) {
    if (d.is_sleep) continue;
    for (NetId t : {d.source, d.drain}) {
      if (nl.net(t).kind != gvn::NetKind::VirtualGnd) continue;
      EXPECT_EQ(nl.cluster_of.at(t), d.name.rfind("s1/", 0) == 0 ? "1" : "2") << d.name;
    }
    for (NetId t : {d.source, d.drain})
      EXPECT_NE(nl.net(t).kind, gvn::NetKind::RailGnd) << d.name;
  }
}

TEST(Generators, ChannelSizingScalesOnlyTargetedDevices) {
  auto base = gvn::bcd_dvt();
  gvn::SizingPolicy s;
  s.tg_width_multiplier = 2;
  auto sized = gvn::apply_channel_sizing(base, s);
  auto tg = gvn::transmission_gate_devices(base);
  for (std::size_t i = 0; i < base.devices.size(); ++i) {
    double w = base.devices[i].geometry.width_m * (tg[i] ? 2.0 : 1.0);
    EXPECT_DOUBLE_EQ(sized.devices[i].geometry.width_m, w) << base.devices[i].name;
    EXPECT_EQ(sized.devices[i].geometry.length_m, base.devices[i].geometry.length_m);
    EXPECT_EQ(sized.devices[i].load_cap_F, base.devices[i].load_cap_F);
  }
  s.sleep_length_multiplier = 0.5;
  EXPECT_THROW(gvn::apply_channel_sizing(base, s), gvn::GeneratorError);
}

TEST(Generators, IdentitySizingLeavesNetlistUnchanged) {
  auto base = gvn::bcd_dvt();
  EXPECT_EQ(gvn::apply_channel_sizing(base, gvn::SizingPolicy{}), base);
}

TEST(Generators, DoubleWidthTransmissionGateHalvesItsStageDelay) {
  gvn::ProcessParams pp;
  gvn::Netlist nl;
  auto vdd = nl.add_net("vdd", gvn::NetKind::RailVdd);
  auto gnd = nl.add_net("gnd", gvn::NetKind::RailGnd);
  auto d = nl.add_net("d", gvn::NetKind::Input);
  auto q = nl.add_net("q", gvn::NetKind::Output);
  nl.add_port(d);
  nl.add_port(q);
  for (auto [name, type, gate] : {std::tuple{"tg.n", gvn::DeviceType::NMOS, vdd},
                                  std::tuple{"tg.p", gvn::DeviceType::PMOS, gnd}}) {
    gvn::Transistor t;
    t.name = name;
    t.device_type = type;
    t.gate = gate;
    t.source = d;
    t.drain = q;
    nl.add_device(t);
  }
  auto delay = [&](const gvn::Netlist& n) {
    gvn::SimState s(n, pp);
    s.apply_inputs(Assign{{d, LogicLevel::L0}}, 0.0);
    s.settle();
    double t0 = s.now();
    s.apply_inputs(Assign{{d, LogicLevel::L1}}, t0);
    s.settle();
    return s.measure_delay(t0);
  };
  gvn::SizingPolicy wide;
  wide.tg_width_multiplier = 2;
  double base = delay(nl);
  EXPECT_GT(base, 0.0);
  EXPECT_NEAR(delay(gvn::apply_channel_sizing(nl, wide)), base / 2, base * 1e-12);
}

TEST(Generators, LongerSleepChannelLeaksLess) {
  gvn::ProcessParams pp;
  gvn::SizingPolicy a, b;
  b.sleep_length_multiplier = 2;
  auto sleep_leak = [&](const gvn::SizingPolicy& s) {
    auto nl = gvn::bcd_gated(s);
    for (const auto& d : nl.devices)
      if (d.is_sleep) return gvn::subthreshold_current(d, 0.0, 0.0, pp.vdd_V, pp);
    return 0.0;
  };
  EXPECT_LT(sleep_leak(b), sleep_leak(a));
  EXPECT_NEAR(sleep_leak(b), sleep_leak(a) / 2, sleep_leak(a) * 1e-12);
}

TEST(Generators, VariantNames) {
  for (auto v : {gvn::Variant::Conventional, gvn::Variant::Dvt, gvn::Variant::Gated})
    EXPECT_EQ(gvn::variant_from_string(gvn::to_string(v)), v);
  EXPECT_FALSE(gvn::variant_from_string("fast"));
}

}  // namespace
