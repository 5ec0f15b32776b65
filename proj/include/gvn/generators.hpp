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

// Circuit generators: the 16-transistor transmission-gate full adder, a
// 4-bit ripple-carry adder, the BCD carry-detect logic and the three BCD
// adder variants (conventional, dual-Vth, clock-gated power-gated).
//
// Device names are "<instance path>/<gate>.<device>", so gate_of() recovers
// the logic gate a device belongs to and Vth can be assigned per gate.

#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gvn/netlist.hpp"
#include "gvn/netlist_format.hpp"

namespace gvn {

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct VthAssignment {
  enum class Policy { AllLow, AllHigh, CriticalPathLow };
  Policy policy = Policy::AllLow;
  // Gate path (as returned by gate_of) -> forced class.
  std::map<std::string, VthClass> overrides;
};

// Reference device used for every generated transistor before sizing.
struct DeviceTemplate {
  ChannelGeometry geometry{90e-9, 45e-9};
  double gate_cap_F = 0.05e-15;
  friend bool operator==(const DeviceTemplate&, const DeviceTemplate&) = default;
};

struct SizingPolicy {
  double sleep_length_multiplier = 1.0;
  double sleep_width_multiplier = 1.0;
  double tg_width_multiplier = 1.0;
  DeviceTemplate base;
};

// Sizing applied by bcd_gated() unless the caller passes its own. Longer
// sleep channels cut their leakage; wider sleep and pass devices recover
// drive on the critical path.
inline SizingPolicy default_gated_sizing() {
  SizingPolicy s;
  s.sleep_length_multiplier = 2.0;
  s.sleep_width_multiplier = 8.0;
  s.tg_width_multiplier = 2.0;
  return s;
}

namespace gen_detail {

inline double canonical(double v) {
  return *format_detail::parse_double(format_real(v));
}

class CellBuilder {
 public:
  explicit CellBuilder(const DeviceTemplate& t = {}) : tmpl_(t) {
    nl.add_net("vdd", NetKind::RailVdd);
    nl.add_net("gnd", NetKind::RailGnd);
  }

  NetId in(const std::string& name) { return port(name, NetKind::Input); }
  NetId out(const std::string& name) { return port(name, NetKind::Output); }
  NetId sig(const std::string& name) { return nl.ensure_net(name, NetKind::Signal); }
  NetId net(const std::string& name) const { return nl.net_id(name); }

  void nmos(const std::string& name, NetId g, NetId s, NetId d) { add(name, DeviceType::NMOS, g, s, d); }
  void pmos(const std::string& name, NetId g, NetId s, NetId d) { add(name, DeviceType::PMOS, g, s, d); }

  void inverter(const std::string& gate, NetId in, NetId out) {
    pmos(gate + ".p", in, net("vdd"), out);
    nmos(gate + ".n", in, net("gnd"), out);
  }

  // Transmission gate conducting when `on` is 1 (and `on_n` is 0).
  void tgate(const std::string& prefix, NetId on, NetId on_n, NetId a, NetId b) {
    nmos(prefix + "n", on, a, b);
    pmos(prefix + "p", on_n, a, b);
  }

  Netlist nl;

 private:
  NetId port(const std::string& name, NetKind kind) {
    NetId id = nl.add_net(name, kind);
    nl.add_port(id);
    return id;
  }

  void add(const std::string& name, DeviceType type, NetId g, NetId s, NetId d) {
    Transistor t;
    t.name = name;
    t.device_type = type;
    t.geometry = tmpl_.geometry;
    t.gate = g;
    t.source = s;
    t.drain = d;
    t.load_cap_F = tmpl_.gate_cap_F;
    nl.add_device(std::move(t));
  }

  DeviceTemplate tmpl_;
};

inline std::string_view local_gate(std::string_view gate) {
  auto slash = gate.rfind('/');
  return slash == std::string_view::npos ? gate : gate.substr(slash + 1);
}

// Gates that carry the decimal carry: every full adder's carry multiplexer
// and the whole carry-detect network.
inline bool on_carry_path(std::string_view gate) {
  static const std::set<std::string_view> names = {
      "cout_mux", "and_a_nand", "and_a_inv", "and_b_nand",
      "and_b_inv", "or_nor", "or_inv"};
  return names.count(local_gate(gate)) > 0;
}

}  // namespace gen_detail

// Names of the gates the CriticalPathLow policy keeps at low Vth.
inline std::set<std::string> critical_gates(const Netlist& nl) {
  std::set<std::string> out;
  for (const auto& d : nl.devices)
    if (!d.is_sleep && gen_detail::on_carry_path(gate_of(d.name)))
      out.emplace(gate_of(d.name));
  return out;
}

inline void apply_vth(Netlist& nl, const VthAssignment& assign) {
  std::set<std::string> gates;
  for (const auto& d : nl.devices) gates.emplace(gate_of(d.name));
  for (const auto& [gate, cls] : assign.overrides)
    if (!gates.count(gate)) throw GeneratorError("Vth override names unknown gate '" + gate + "'");
  for (auto& d : nl.devices) {
    if (d.is_sleep) continue;
    std::string gate(gate_of(d.name));
    if (auto it = assign.overrides.find(gate); it != assign.overrides.end()) {
      d.vth_class = it->second;
      continue;
    }
    switch (assign.policy) {
      case VthAssignment::Policy::AllLow: d.vth_class = VthClass::Low; break;
      case VthAssignment::Policy::AllHigh: d.vth_class = VthClass::High; break;
      case VthAssignment::Policy::CriticalPathLow:
        d.vth_class = gen_detail::on_carry_path(gate) ? VthClass::Low : VthClass::High;
        break;
    }
  }
}

// Resizes sleep devices (W and L) and transmission-gate devices (W). Only
// the channel geometry changes; load capacitances are left as generated.
inline Netlist apply_channel_sizing(const Netlist& netlist, const SizingPolicy& sizing) {
  if (sizing.sleep_length_multiplier < 1 || sizing.sleep_width_multiplier < 1 ||
      sizing.tg_width_multiplier < 1)
    throw GeneratorError("sizing multipliers must be >= 1");
  Netlist out = netlist;
  auto tg = transmission_gate_devices(netlist);
  for (std::size_t i = 0; i < out.devices.size(); ++i) {
    auto& d = out.devices[i];
    double wm = 1.0, lm = 1.0;
    if (d.is_sleep) {
      wm = sizing.sleep_width_multiplier;
      lm = sizing.sleep_length_multiplier;
    } else if (tg[i]) {
      wm = sizing.tg_width_multiplier;
    }
    if (wm == 1.0 && lm == 1.0) continue;
    d.geometry.width_m = gen_detail::canonical(d.geometry.width_m * wm);
    d.geometry.length_m = gen_detail::canonical(d.geometry.length_m * lm);
  }
  return out;
}

// 16T cell: a 4T pass-transistor XOR gives h = a^b, an inverter gives h',
// another inverter gives cin'. sum = h ? cin' : cin and cout = h ? cin : a,
// each a pair of transmission gates.
inline Netlist full_adder_16t(const VthAssignment& assign = {}, const DeviceTemplate& tmpl = {}) {
  gen_detail::CellBuilder b(tmpl);
  NetId a = b.in("a"), bb = b.in("b"), cin = b.in("cin");
  NetId sum = b.out("sum"), cout = b.out("cout");
  NetId h = b.sig("h"), hn = b.sig("hn"), cn = b.sig("cn"), x = b.sig("x");
  NetId gnd = b.net("gnd");

  b.pmos("xor.p1", bb, a, h);
  b.pmos("xor.p2", a, bb, h);
  b.nmos("xor.n1", a, x, h);
  b.nmos("xor.n2", bb, gnd, x);
  b.inverter("inv_h", h, hn);
  b.inverter("inv_c", cin, cn);
  b.tgate("sum_mux.c", hn, h, cin, sum);
  b.tgate("sum_mux.cn", h, hn, cn, sum);
  b.tgate("cout_mux.a", hn, h, a, cout);
  b.tgate("cout_mux.c", h, hn, cin, cout);

  apply_vth(b.nl, assign);
  return std::move(b.nl);
}

inline Netlist rca4(const VthAssignment& assign = {}, const DeviceTemplate& tmpl = {}) {
  gen_detail::CellBuilder b(tmpl);
  for (int i = 0; i < 4; ++i) b.in("a" + std::to_string(i));
  for (int i = 0; i < 4; ++i) b.in("b" + std::to_string(i));
  b.in("cin");
  for (int i = 0; i < 4; ++i) b.out("s" + std::to_string(i));
  b.out("cout");
  for (int i = 1; i < 4; ++i) b.sig("c" + std::to_string(i));

  Netlist fa = full_adder_16t({}, tmpl);
  Netlist nl = std::move(b.nl);
  for (int i = 0; i < 4; ++i) {
    auto n = std::to_string(i);
    nl = instantiate(nl, fa,
                     {{"a", "a" + n},
                      {"b", "b" + n},
                      {"cin", i == 0 ? "cin" : "c" + n},
                      {"sum", "s" + n},
                      {"cout", i == 3 ? "cout" : "c" + std::to_string(i + 1)}},
                     "fa" + n);
  }
  apply_vth(nl, assign);
  return nl;
}

// c = k + z8*z4 + z8*z2 as NAND+INV, NAND+INV and NOR3+INV.
inline Netlist carry_detect(const VthAssignment& assign = {}, const DeviceTemplate& tmpl = {}) {
  gen_detail::CellBuilder b(tmpl);
  NetId k = b.in("k"), z8 = b.in("z8"), z4 = b.in("z4"), z2 = b.in("z2");
  NetId c = b.out("c");
  NetId vdd = b.net("vdd"), gnd = b.net("gnd");

  auto and2 = [&](const std::string& g, NetId x, NetId y, NetId out) {
    NetId nand = b.sig(g + "_n"), mid = b.sig(g + "_m");
    b.pmos(g + "_nand.p1", x, vdd, nand);
    b.pmos(g + "_nand.p2", y, vdd, nand);
    b.nmos(g + "_nand.n1", x, mid, nand);
    b.nmos(g + "_nand.n2", y, gnd, mid);
    b.inverter(g + "_inv", nand, out);
  };
  NetId ta = b.sig("ta"), tb = b.sig("tb");
  and2("and_a", z8, z4, ta);
  and2("and_b", z8, z2, tb);

  NetId nor = b.sig("or_n"), p1 = b.sig("or_p1"), p2 = b.sig("or_p2");
  b.pmos("or_nor.p1", k, vdd, p1);
  b.pmos("or_nor.p2", ta, p1, p2);
  b.pmos("or_nor.p3", tb, p2, nor);
  b.nmos("or_nor.n1", k, gnd, nor);
  b.nmos("or_nor.n2", ta, gnd, nor);
  b.nmos("or_nor.n3", tb, gnd, nor);
  b.inverter("or_inv", nor, c);

  apply_vth(b.nl, assign);
  return std::move(b.nl);
}

namespace gen_detail {

struct BcdOptions {
  VthAssignment assign;
  bool gated = false;
  SizingPolicy sizing;
};

inline void tag_new_nets(Netlist& nl, std::size_t from, const std::string& tag) {
  for (std::size_t i = from; i < nl.nets.size(); ++i) nl.cluster_of[nl.nets[i].id] = tag;
}

// Stage 1 adds the digits, carry-detect decides whether the binary sum
// exceeds 9, stage 2 adds (0, c, c, 0), i.e. 6 when the correction fires.
inline Netlist build_bcd(const BcdOptions& opt) {
  const DeviceTemplate& tmpl = opt.sizing.base;
  Netlist nl;
  nl.add_net("vdd", NetKind::RailVdd);
  nl.add_net("gnd", NetKind::RailGnd);
  for (auto p : {"a", "b"})
    for (int i = 0; i < 4; ++i) nl.add_port(nl.add_net(p + std::to_string(i), NetKind::Input));
  nl.add_port(nl.add_net("cin", NetKind::Input));
  for (int i = 0; i < 4; ++i) nl.add_port(nl.add_net("digit" + std::to_string(i), NetKind::Output));
  nl.add_port(nl.add_net("carry", NetKind::Output));
  std::string gnd1 = "gnd", gnd2 = "gnd";
  if (opt.gated) {
    nl.add_port(nl.add_net("clk1", NetKind::Clock));
    nl.add_port(nl.add_net("clk2", NetKind::Clock));
    gnd1 = "vgnd1";
    gnd2 = "vgnd2";
  }

  Netlist adder = rca4({}, tmpl);
  Netlist detect = carry_detect({}, tmpl);

  std::size_t mark = nl.nets.size();
  if (opt.gated) nl.add_net(gnd1, NetKind::VirtualGnd);
  for (int i = 0; i < 4; ++i) nl.add_net("z" + std::to_string(i), NetKind::Signal);
  nl.add_net("k", NetKind::Signal);
  std::map<std::string, std::string> s1 = {{"cin", "cin"}, {"cout", "k"}, {"gnd", gnd1}};
  for (int i = 0; i < 4; ++i) {
    auto n = std::to_string(i);
    s1["a" + n] = "a" + n;
    s1["b" + n] = "b" + n;
    s1["s" + n] = "z" + n;
  }
  nl = instantiate(nl, adder, s1, "s1");
  if (opt.gated) tag_new_nets(nl, mark, "1");

  mark = nl.nets.size();
  if (opt.gated) {
    nl.add_net(gnd2, NetKind::VirtualGnd);
    nl.cluster_of[nl.net_id("carry")] = "2";
    for (int i = 0; i < 4; ++i) nl.cluster_of[nl.net_id("digit" + std::to_string(i))] = "2";
  }
  nl.add_net("s2_cout", NetKind::Signal);
  nl = instantiate(nl, detect,
                   {{"k", "k"}, {"z8", "z3"}, {"z4", "z2"}, {"z2", "z1"}, {"c", "carry"}, {"gnd", gnd2}},
                   "cd");
  std::map<std::string, std::string> s2 = {
      {"b0", gnd2}, {"b1", "carry"}, {"b2", "carry"}, {"b3", gnd2},
      {"cin", gnd2}, {"cout", "s2_cout"}, {"gnd", gnd2}};
  for (int i = 0; i < 4; ++i) {
    auto n = std::to_string(i);
    s2["a" + n] = "z" + n;
    s2["s" + n] = "digit" + n;
  }
  nl = instantiate(nl, adder, s2, "s2");
  if (opt.gated) tag_new_nets(nl, mark, "2");

  apply_vth(nl, opt.assign);

  if (opt.gated) {
    for (int c = 1; c <= 2; ++c) {
      auto n = std::to_string(c);
      Transistor t;
      t.name = "sleep" + n;
      t.device_type = DeviceType::NMOS;
      t.vth_class = VthClass::High;
      t.geometry = tmpl.geometry;
      t.gate = nl.net_id("clk" + n);
      t.source = nl.net_id("gnd");
      t.drain = nl.net_id("vgnd" + n);
      t.is_sleep = true;
      t.load_cap_F = tmpl.gate_cap_F;
      nl.add_device(std::move(t));
    }
    nl = apply_channel_sizing(nl, opt.sizing);
  }
  return nl;
}

}  // namespace gen_detail

inline Netlist bcd_conventional(const DeviceTemplate& tmpl = {}) {
  gen_detail::BcdOptions o;
  o.assign.policy = VthAssignment::Policy::AllLow;
  o.sizing.base = tmpl;
  return gen_detail::build_bcd(o);
}

inline Netlist bcd_dvt(const DeviceTemplate& tmpl = {}) {
  gen_detail::BcdOptions o;
  o.assign.policy = VthAssignment::Policy::CriticalPathLow;
  o.sizing.base = tmpl;
  return gen_detail::build_bcd(o);
}

inline Netlist bcd_gated(const SizingPolicy& sizing = default_gated_sizing()) {
  gen_detail::BcdOptions o;
  o.assign.policy = VthAssignment::Policy::CriticalPathLow;
  o.gated = true;
  o.sizing = sizing;
  return gen_detail::build_bcd(o);
}

enum class Variant { Conventional, Dvt, Gated };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Conventional: return "conventional";
    case Variant::Dvt: return "dvt";
    case Variant::Gated: return "gated";
  }
  return "?";
}

inline std::optional<Variant> variant_from_string(std::string_view s) {
  for (auto v : {Variant::Conventional, Variant::Dvt, Variant::Gated})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

inline Netlist generate(Variant v) {
  switch (v) {
    case Variant::Conventional: return bcd_conventional();
    case Variant::Dvt: return bcd_dvt();
    case Variant::Gated: return bcd_gated();
  }
  throw GeneratorError("unknown variant");
}

}  // namespace gvn
