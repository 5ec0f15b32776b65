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

// Closed-form device models and power accounting.
//
//   subthreshold current   I = A exp(q*gamma*(Vgs - Vth) / (n' k T)) (1 - exp(-q Vds / (k T)))
//                          A = mu0 Cox (W/L) (k T / q)^2 e^1.8
//   alpha-power delay      t = C_L Vdd / (K (Vdd - Vth)^alpha)
//   switching energy       E = C_L Vdd^2 / 2 per transition
//
// State leakage sums, over every rail-to-rail path blocked by OFF devices,
// the smallest OFF-device current on the path attenuated by
// stack_factor^(n_off - 1). Devices with an unknown gate are taken as OFF
// at the lowest threshold on their path (worst case).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "gvn/logic.hpp"
#include "gvn/netlist.hpp"
#include "gvn/process_params.hpp"

namespace gvn {

class ModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline double leakage_prefactor(const ChannelGeometry& g, const ProcessParams& pp) {
  double vt = pp.thermal_voltage();
  return pp.mu0_m2_per_Vs * pp.cox_F_per_m2 * (g.width_m / g.length_m) * vt * vt *
         std::exp(1.8);
}

// Off-state drain current for a device with threshold vth_V. Voltages are
// normalized so that vgs_V is the gate overdrive seen by the device (mirrored
// for PMOS by the caller) and vds_V >= 0.
inline double subthreshold_current(const ChannelGeometry& g, double vth_V, double vgs_V,
                                   double vds_V, const ProcessParams& pp) {
  double overdrive = vgs_V - vth_V;
  if (overdrive >= 0.0) return 0.0;
  double vt = pp.thermal_voltage();
  vds_V = std::max(vds_V, 0.0);
  return leakage_prefactor(g, pp) * std::exp(pp.gamma * overdrive / (pp.n_prime * vt)) *
         (1.0 - std::exp(-vds_V / vt));
}

inline double subthreshold_current(const Transistor& device, double vg_V, double vs_V,
                                   double vds_V, const ProcessParams& pp) {
  double vgs = device.device_type == DeviceType::NMOS ? vg_V - vs_V : vs_V - vg_V;
  return subthreshold_current(device.geometry, pp.vth(device.vth_class), vgs, vds_V, pp);
}

inline double gate_delay(double cl_F, double vdd_V, double k_drive, double vth_V,
                         double alpha) {
  if (!(vth_V < vdd_V)) throw ModelError("gate_delay: vth must be below vdd");
  if (cl_F < 0) throw ModelError("gate_delay: negative load");
  return cl_F * vdd_V / (k_drive * std::pow(vdd_V - vth_V, alpha));
}

// Drive factor of a specific device; K scales with W/L relative to the
// reference aspect.
inline double device_drive(const Transistor& d, const ProcessParams& pp) {
  return pp.k_drive * d.geometry.aspect() / pp.drive_ref_aspect;
}

inline double pdp(double avg_power_W, double delay_s) { return avg_power_W * delay_s; }

// ---------------------------------------------------------------------------
// Power traces

struct SwitchingEvent {
  double time_s = 0;
  NetId net;
  double cap_F = 0;
};

struct LeakageInterval {
  double start_s = 0;
  double end_s = 0;
  double leakage_W = 0;
};

struct PowerTrace {
  std::vector<SwitchingEvent> switching_events;
  std::vector<LeakageInterval> leakage_intervals;
  double duration_s = 0;
};

inline double dynamic_energy(const PowerTrace& trace, const ProcessParams& pp) {
  double c = 0;
  for (const auto& e : trace.switching_events) c += e.cap_F;
  return 0.5 * c * pp.vdd_V * pp.vdd_V;
}

inline double leakage_energy(const PowerTrace& trace) {
  double e = 0;
  for (const auto& iv : trace.leakage_intervals) e += iv.leakage_W * (iv.end_s - iv.start_s);
  return e;
}

inline double average_power(const PowerTrace& trace, const ProcessParams& pp) {
  if (!(trace.duration_s > 0)) throw ModelError("average_power: zero duration");
  return (dynamic_energy(trace, pp) + leakage_energy(trace)) / trace.duration_s;
}

// ---------------------------------------------------------------------------
// State-dependent leakage

struct LeakageOptions {
  // Paths with more series OFF devices than this are dropped; their share is
  // below stack_factor^(max_series_off) of a single device.
  int max_series_off = 4;
};

namespace leakage_detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

enum class Side : std::uint8_t { Internal, High, Low, Short };

struct Edge {
  std::uint32_t to;
  ChannelGeometry geometry;
  double vth;
  bool uncertain;  // gate is not a definite level
};

// Enumerates simple paths from a High supernode to a Low one through at
// most max_off blocking devices. Uncertain devices count as OFF at the
// lowest threshold found on their path.
struct PathWalk {
  const std::vector<std::vector<Edge>>& adj;
  const std::vector<Side>& side;
  std::vector<char>& on_path;
  const ProcessParams& pp;
  int max_off;
  double total = 0;

  double current(const ChannelGeometry& g, double vth) const {
    return subthreshold_current(g, vth, 0.0, pp.vdd_V, pp);
  }

  // min_def: smallest current of a definitely-OFF device so far; min_x: the
  // uncertain device with the smallest prefactor (nullptr if none); min_vth
  // over every device on the path.
  void walk(std::uint32_t node, int n_off, double min_def, const Edge* min_x, double min_vth) {
    for (const Edge& e : adj[node]) {
      if (on_path[e.to]) continue;
      int n = n_off + 1;
      double md = min_def;
      const Edge* mx = min_x;
      if (!e.uncertain) md = std::min(md, current(e.geometry, e.vth));
      else if (!mx || e.geometry.aspect() < mx->geometry.aspect()) mx = &e;
      double mv = std::min(min_vth, e.vth);
      switch (side[e.to]) {
        case Side::Low: {
          double i = mx ? std::min(md, current(mx->geometry, mv)) : md;
          total += i * std::pow(pp.stack_factor, n - 1);
          break;
        }
        case Side::Internal:
          if (n < max_off) {
            on_path[e.to] = 1;
            walk(e.to, n, md, mx, mv);
            on_path[e.to] = 0;
          }
          break;
        default:
          break;
      }
    }
  }
};

}  // namespace leakage_detail

// Leakage power of the circuit held in `values` (one level per net). Does not
// require the values to be quiescent; see the SimState overload for the
// checked variant.
inline double state_leakage(const Netlist& nl, std::span<const LogicLevel> values,
                            const ProcessParams& pp, const LeakageOptions& opt = {}) {
  using namespace leakage_detail;
  const std::size_t n = nl.nets.size();
  if (values.size() != n) throw ModelError("state_leakage: value vector size mismatch");

  DisjointSets sets(n);
  std::vector<Conduction> cond(nl.devices.size());
  for (std::size_t i = 0; i < nl.devices.size(); ++i) {
    const auto& d = nl.devices[i];
    cond[i] = conduction(d.device_type, values[d.gate.value]);
    if (cond[i] == Conduction::On) sets.unite(d.source.value, d.drain.value);
  }

  std::vector<char> high(n, 0), low(n, 0);
  for (const auto& net : nl.nets) {
    auto r = sets.find(net.id.value);
    switch (net.kind) {
      case NetKind::RailVdd: high[r] = 1; break;
      case NetKind::RailGnd: low[r] = 1; break;
      default: break;
    }
  }
  std::vector<Side> side(n, Side::Internal);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (high[i] && low[i]) side[i] = Side::Short;
    else if (high[i]) side[i] = Side::High;
    else if (low[i]) side[i] = Side::Low;
  }

  std::vector<std::vector<Edge>> adj(n);
  const double vdd = pp.vdd_V;
  for (std::size_t i = 0; i < nl.devices.size(); ++i) {
    if (cond[i] == Conduction::On) continue;
    const auto& d = nl.devices[i];
    auto a = sets.find(d.source.value);
    auto b = sets.find(d.drain.value);
    if (a == b) continue;
    Edge e{b, d.geometry, pp.vth(d.vth_class), cond[i] == Conduction::Unknown};
    adj[a].push_back(e);
    e.to = a;
    adj[b].push_back(e);
  }

  std::vector<char> on_path(n, 0);
  PathWalk walker{adj, side, on_path, pp, opt.max_series_off};
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::uint32_t r = 0; r < n; ++r) {
    if (side[r] != Side::High || sets.find(r) != r) continue;
    on_path[r] = 1;
    walker.walk(r, 0, inf, nullptr, inf);
    on_path[r] = 0;
  }
  return vdd * walker.total;
}

}  // namespace gvn
