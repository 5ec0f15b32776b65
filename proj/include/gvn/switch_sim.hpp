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

// Event-driven four-valued switch-level simulator.
//
// Nets are grouped into channel-connected components (CCCs): nets joined
// through the source/drain of devices that conduct or may conduct (gate X).
// Rails, inputs, clocks and virtual rails are value sources and terminate a
// component.
//
// Each device has a resistance proportional to its slowness
// 1 / (K_d (Vdd - Vth_d)^alpha), multiplied by degraded_pass_factor when it
// passes its weak level (NMOS passing 1, PMOS passing 0). Within a component, every net finds its
// least-resistance path from sources of each value:
//   - the strictly least resistive definite drive (L0 or L1) wins; a tie
//     between values, or an X source at least as strong, gives LX;
//   - a net with no conducting path to a source keeps its stored charge
//     (nets joined by conducting devices share it; unequal charge -> LX);
//   - paths through uncertain devices do not override a conducting drive,
//     but destroy stored charge if they could deliver a different value.
//
// A virtual rail carries its real rail's value while a sleep device joining
// them conducts (LX while that device's gate is unknown). Once every sleep
// device is off the rail floats (LZ): it drives nothing, but its stored
// charge joins the charge of the nets connected to it. The cluster's own
// nets never drive it.
//
// A new value on net m is scheduled one stage delay after the change that
// caused it: gate_delay(C_L(m), Vdd, K_path, Vth_max, alpha) over the
// deciding path, where 1/K_path sums 1/K_d of its devices (series drive) and
// Vth_max is the highest threshold on it. Rescheduling a net cancels its
// pending event (inertial delay).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gvn/logic.hpp"
#include "gvn/netlist.hpp"
#include "gvn/netlist_format.hpp"
#include "gvn/power_model.hpp"
#include "gvn/process_params.hpp"

namespace gvn {

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Event {
  double time_s = 0;
  NetId net;
  LogicLevel new_value = LogicLevel::LX;
  friend bool operator==(const Event&, const Event&) = default;
};

struct SimOptions {
  std::size_t max_events = 1'000'000;
  // Charge needed to pull a virtual rail back to its supply when the sleep
  // device feeding it turns on. Booked as one switching event per wake.
  double wake_cap_F = 0.0;
  LeakageOptions leakage;
  // Resistance multiplier for a device passing its degraded level (NMOS
  // passing 1, PMOS passing 0, both a threshold short of the rail).
  double degraded_pass_factor = 4.0;
};

namespace sim_detail {

// Immutable per-netlist lookup tables.
struct Topology {
  std::vector<double> cap;                       // C_L per net
  std::vector<char> source;                      // net is a value source
  std::vector<char> virtual_rail;
  std::vector<std::vector<std::uint32_t>> gate_fanout;  // devices gated by net
  std::vector<std::vector<std::uint32_t>> channel;      // devices touching net by S/D
  // Per device: 1 / (K_d (Vdd - Vth_d)^alpha), the device's contribution
  // to a stage delay per farad-volt of load.
  std::vector<double> slowness;
  std::vector<double> inv_drive;  // 1 / K_d
  std::vector<double> vth;
  std::vector<std::uint32_t> wake_rail;          // per device; npos unless sleep

  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  Topology(const Netlist& nl, const ProcessParams& pp) {
    const std::size_t n = nl.nets.size();
    cap = net_load_caps(nl, pp.wire_cap_F);
    source.resize(n);
    virtual_rail.resize(n);
    gate_fanout.resize(n);
    channel.resize(n);
    for (const auto& net : nl.nets) {
      source[net.id.value] = is_source_kind(net.kind) || is_virtual_rail(net.kind);
      virtual_rail[net.id.value] = is_virtual_rail(net.kind);
    }
    const std::size_t nd = nl.devices.size();
    slowness.resize(nd);
    inv_drive.resize(nd);
    vth.resize(nd);
    wake_rail.assign(nd, npos);
    for (std::uint32_t i = 0; i < nd; ++i) {
      const auto& d = nl.devices[i];
      gate_fanout[d.gate.value].push_back(i);
      if (d.source != d.drain) {
        channel[d.source.value].push_back(i);
        channel[d.drain.value].push_back(i);
      }
      slowness[i] = gate_delay(1.0, 1.0, device_drive(d, pp), pp.vth(d.vth_class), pp.alpha);
      inv_drive[i] = 1.0 / device_drive(d, pp);
      vth[i] = pp.vth(d.vth_class);
      if (d.is_sleep) {
        if (is_virtual_rail(nl.net(d.drain).kind)) wake_rail[i] = d.drain.value;
        else if (is_virtual_rail(nl.net(d.source).kind)) wake_rail[i] = d.source.value;
      }
    }
  }
};

struct Queued {
  double time;
  std::uint64_t seq;
  std::uint32_t net;
  LogicLevel value;
  std::uint32_t gen;  // kUnconditional for stimulus events
  bool operator>(const Queued& o) const {
    return time != o.time ? time > o.time : seq > o.seq;
  }
};

constexpr std::uint32_t kUnconditional = std::numeric_limits<std::uint32_t>::max();

}  // namespace sim_detail

class SimState {
 public:
  SimState(const Netlist& netlist, const ProcessParams& params, SimOptions options = {})
      : netlist_(&netlist), params_(params), options_(options) {
    auto report = validate(netlist);
    if (!report.ok())
      throw SimError("invalid netlist: " + report.findings.front().rule + " on " +
                     report.findings.front().subject);
    if (!netlist.rail(NetKind::RailVdd)) throw SimError("netlist has no RailVdd net");
    if (!netlist.rail(NetKind::RailGnd)) throw SimError("netlist has no RailGnd net");
    check(params);
    topo_ = std::make_shared<const sim_detail::Topology>(netlist, params);
    const std::size_t n = netlist.nets.size();
    value_.assign(n, LogicLevel::LX);
    for (const auto& net : netlist.nets) {
      if (net.kind == NetKind::RailVdd) value_[net.id.value] = LogicLevel::L1;
      if (net.kind == NetKind::RailGnd) value_[net.id.value] = LogicLevel::L0;
    }
    last_definite_ = value_;
    pending_.assign(n, Pending{});
    last_transition_.assign(n, -1.0);
    mark_.assign(n, 0);
    sub_mark_.assign(n, 0);
    charge_.assign(n, LogicLevel::LX);
    rail_charge_.assign(n, LogicLevel::LX);
    group_mark_.assign(n, 0);
    dist_.assign(kSearches * n, 0.0);
    dist_mark_.assign(kSearches * n, 0);
    inv_k_.assign(kSearches * n, 0.0);
    vth_max_.assign(kSearches * n, 0.0);
  }

  const Netlist& netlist() const { return *netlist_; }
  const ProcessParams& params() const { return params_; }
  double now() const { return now_; }
  bool quiescent() const { return queue_.empty(); }
  std::span<const LogicLevel> values() const { return value_; }
  LogicLevel value(NetId id) const { return value_.at(id.value); }
  LogicLevel value(std::string_view name) const { return value(netlist_->net_id(name)); }

  void apply_inputs(std::span<const std::pair<NetId, LogicLevel>> assignments, double at_s) {
    if (at_s < now_) throw SimError("input assignment in the past");
    for (const auto& [id, v] : assignments) {
      if (!netlist_->has_net(id)) throw SimError("assignment to unknown net");
      auto kind = netlist_->net(id).kind;
      if (kind != NetKind::Input && kind != NetKind::Clock)
        throw SimError("assignment to non-port net '" + netlist_->net(id).name + "'");
      queue_.push({at_s, seq_++, id.value, v, sim_detail::kUnconditional});
    }
  }

  void apply_inputs(const std::map<NetId, LogicLevel>& assignments, double at_s) {
    std::vector<std::pair<NetId, LogicLevel>> v(assignments.begin(), assignments.end());
    apply_inputs(v, at_s);
  }

  std::size_t pending_events() const { return queue_.size(); }

  // Processes the queue to quiescence and returns the applied transitions.
  std::vector<Event> settle() { return run(std::numeric_limits<double>::infinity(), true); }

  // Processes every event strictly before t_s; now() becomes t_s.
  std::vector<Event> run_until(double t_s) {
    auto ev = run(t_s, false);
    now_ = std::max(now_, t_s);
    return ev;
  }

  // Processes every event at or before t_s; now() becomes t_s.
  std::vector<Event> run_through(double t_s) {
    auto ev = run(t_s, true);
    now_ = std::max(now_, t_s);
    return ev;
  }

  std::map<NetId, LogicLevel> read_outputs() const {
    std::map<NetId, LogicLevel> out;
    for (NetId p : netlist_->output_ports) out.emplace(p, value_[p.value]);
    return out;
  }

  // Latest output transition at or after from_s, relative to from_s.
  double measure_delay(double from_s) const {
    double worst = 0.0;
    for (NetId p : netlist_->output_ports) {
      double t = last_transition_[p.value];
      if (t >= from_s) worst = std::max(worst, t - from_s);
    }
    return worst;
  }

  double last_transition(NetId id) const { return last_transition_.at(id.value); }

  // Leakage of the current values; requires an empty queue.
  double state_leakage() const {
    if (!queue_.empty()) throw SimError("state_leakage on an unsettled state");
    return gvn::state_leakage(*netlist_, value_, params_, options_.leakage);
  }

  // Starts recording switching events and leakage intervals at t_s. Events
  // before t_s must already have been processed.
  void begin_trace(double t_s) {
    run_until(t_s);
    trace_ = PowerTrace{};
    tracing_ = true;
    trace_origin_ = t_s;
    interval_start_ = t_s;
    interval_leak_ = cached_leakage();
  }

  PowerTrace end_trace(double t_s) {
    if (!tracing_) throw SimError("end_trace without begin_trace");
    run_until(t_s);
    close_interval(t_s);
    tracing_ = false;
    trace_.duration_s = t_s - trace_origin_;
    return std::move(trace_);
  }

 private:
  struct Pending {
    bool active = false;
    LogicLevel value = LogicLevel::LX;
    std::uint32_t gen = 0;
  };

  std::vector<Event> run(double limit, bool inclusive) {
    std::vector<Event> applied;
    std::size_t processed = 0;
    std::vector<std::uint32_t> changed;
    if (!initialized_) {
      initialized_ = true;
      // The first pass resolves every component once so that nets tied to
      // constant gates settle even if no stimulus reaches them.
      std::vector<std::uint32_t> all(value_.size());
      for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
      double t0 = now_;
      resolve(all, t0);
    }
    while (!queue_.empty()) {
      double t = queue_.top().time;
      if (inclusive ? t > limit : t >= limit) break;
      now_ = t;
      changed.clear();
      while (!queue_.empty() && queue_.top().time == t) {
        auto q = queue_.top();
        queue_.pop();
        if (q.gen != sim_detail::kUnconditional) {
          auto& p = pending_[q.net];
          if (!p.active || p.gen != q.gen) continue;
          p.active = false;
        }
        if (++processed > options_.max_events)
          throw SimError("oscillation guard: event bound exceeded without quiescence");
        if (value_[q.net] == q.value) continue;
        apply(q.net, q.value, t);
        applied.push_back({t, NetId{q.net}, q.value});
        changed.push_back(q.net);
      }
      if (changed.empty()) continue;
      if (tracing_) {
        close_interval(t);
        interval_start_ = t;
        interval_leak_ = cached_leakage();
      }
      std::vector<std::uint32_t> seeds;
      for (auto n : changed) {
        for (auto di : topo_->gate_fanout[n]) {
          const auto& d = netlist_->devices[di];
          seeds.push_back(d.source.value);
          seeds.push_back(d.drain.value);
        }
        if (topo_->source[n]) {
          for (auto di : topo_->channel[n]) {
            const auto& d = netlist_->devices[di];
            seeds.push_back(d.source.value == n ? d.drain.value : d.source.value);
          }
        }
      }
      resolve(seeds, t);
    }
    return applied;
  }

  void apply(std::uint32_t net, LogicLevel v, double t) {
    LogicLevel before = last_definite_[net];
    value_[net] = v;
    last_transition_[net] = t;
    if (topo_->virtual_rail[net] && v != LogicLevel::LZ) rail_charge_[net] = v;
    if (!is_definite(v)) return;
    last_definite_[net] = v;
    if (tracing_ && t >= trace_origin_) {
      if (is_definite(before) && before != v && !is_rail(netlist_->nets[net].kind))
        trace_.switching_events.push_back({t - trace_origin_, NetId{net}, topo_->cap[net]});
      for (auto di : topo_->gate_fanout[net]) {
        auto rail = topo_->wake_rail[di];
        if (rail == sim_detail::Topology::npos) continue;
        if (conduction(netlist_->devices[di].device_type, v) == Conduction::On &&
            options_.wake_cap_F > 0)
          trace_.switching_events.push_back({t - trace_origin_, NetId{rail}, options_.wake_cap_F});
      }
    }
  }

  void close_interval(double t) {
    if (t > interval_start_)
      trace_.leakage_intervals.push_back(
          {interval_start_ - trace_origin_, t - trace_origin_, interval_leak_});
    interval_start_ = t;
  }

  double cached_leakage() {
    std::string key(value_.size(), '\0');
    for (std::size_t i = 0; i < value_.size(); ++i) key[i] = static_cast<char>(value_[i]);
    auto it = leak_cache_.find(key);
    if (it != leak_cache_.end()) return it->second;
    double w = gvn::state_leakage(*netlist_, value_, params_, options_.leakage);
    leak_cache_.emplace(std::move(key), w);
    return w;
  }

  static LogicLevel combine(bool has0, bool has1, bool hasx) {
    if (hasx || (has0 && has1)) return LogicLevel::LX;
    if (has1) return LogicLevel::L1;
    if (has0) return LogicLevel::L0;
    return LogicLevel::LZ;
  }

  Conduction cond(std::uint32_t di) const {
    const auto& d = netlist_->devices[di];
    return conduction(d.device_type, value_[d.gate.value]);
  }

  // Per component, six path searches: driving value (L0, L1, LX) times
  // device set (conducting only, or conducting and uncertain).
  static constexpr int kSearches = 6;
  static constexpr std::uint32_t kNoDevice = sim_detail::Topology::npos;

  void resolve(const std::vector<std::uint32_t>& seeds, double t) {
    const auto& topo = *topo_;
    ++stamp_;
    for (auto seed : seeds) {
      if (topo.virtual_rail[seed]) {
        resolve_virtual_rail(seed, t);
        continue;
      }
      if (topo.source[seed] || mark_[seed] == stamp_) continue;

      // Possibly-conducting component.
      comp_.clear();
      comp_.push_back(seed);
      mark_[seed] = stamp_;
      for (std::size_t i = 0; i < comp_.size(); ++i) {
        auto n = comp_[i];
        for (auto di : topo.channel[n]) {
          if (cond(di) == Conduction::Off) continue;
          const auto& d = netlist_->devices[di];
          auto other = d.source.value == n ? d.drain.value : d.source.value;
          if (!topo.source[other] && mark_[other] != stamp_) {
            mark_[other] = stamp_;
            comp_.push_back(other);
          }
        }
      }

      ++dist_stamp_;
      for (int k = 0; k < kSearches; ++k) path_search(k);

      // Stored charge of each group of undriven nets joined by conducting
      // devices; differing charges share to LX.
      ++group_stamp_;
      for (auto start : comp_) {
        if (driven(start) || group_mark_[start] == group_stamp_) continue;
        sub_.clear();
        sub_.push_back(start);
        group_mark_[start] = group_stamp_;
        bool c0 = false, c1 = false, cx = false;
        for (std::size_t i = 0; i < sub_.size(); ++i) {
          auto n = sub_[i];
          note_source(value_[n], c0, c1, cx);
          for (auto di : topo.channel[n]) {
            if (cond(di) != Conduction::On) continue;
            const auto& d = netlist_->devices[di];
            auto other = d.source.value == n ? d.drain.value : d.source.value;
            if (topo.virtual_rail[other] && value_[other] == LogicLevel::LZ)
              note_source(rail_charge_[other], c0, c1, cx);
            else if (!topo.source[other] && group_mark_[other] != group_stamp_) {
              group_mark_[other] = group_stamp_;
              sub_.push_back(other);
            }
          }
        }
        LogicLevel charge = combine(c0, c1, cx);
        for (auto n : sub_) charge_[n] = charge;
      }

      for (auto n : comp_) decide_and_schedule(n, t);
    }
  }

  double dist(int k, std::uint32_t n) const {
    std::size_t i = k * value_.size() + n;
    return dist_mark_[i] == dist_stamp_ ? dist_[i] : std::numeric_limits<double>::infinity();
  }
  std::uint32_t via(int k, std::uint32_t n) const { return static_cast<std::uint32_t>(k * value_.size() + n); }

  bool driven(std::uint32_t n) const {
    return dist(0, n) < std::numeric_limits<double>::infinity() ||
           dist(1, n) < std::numeric_limits<double>::infinity() ||
           dist(2, n) < std::numeric_limits<double>::infinity();
  }

  // a is a strictly stronger (less resistive) drive than b.
  static bool stronger(double a, double b) {
    return a < std::numeric_limits<double>::infinity() && a < b * (1.0 - 1e-9);
  }

  void decide_and_schedule(std::uint32_t n, double t) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double rd[3] = {dist(0, n), dist(1, n), dist(2, n)};
    LogicLevel v;
    double r = inf;
    std::uint32_t dev = kNoDevice;
    if (stronger(rd[0], rd[1]) && stronger(rd[0], rd[2])) {
      v = LogicLevel::L0;
      r = rd[0];
      dev = via(0, n);
    } else if (stronger(rd[1], rd[0]) && stronger(rd[1], rd[2])) {
      v = LogicLevel::L1;
      r = rd[1];
      dev = via(1, n);
    } else if (rd[0] < inf || rd[1] < inf || rd[2] < inf) {
      v = LogicLevel::LX;
      int k = rd[0] <= rd[1] ? 0 : 1;
      if (rd[2] <= rd[k]) k = 2;
      dev = via(k, n);
    } else {
      v = charge_[n];
    }
    if (r == inf && v != LogicLevel::LX) {
      // Stored charge is lost if an uncertain device could connect the net
      // to a different value.
      for (int w = 0; w < 3; ++w) {
        if (w == static_cast<int>(v) || dist(3 + w, n) == inf) continue;
        if (v == LogicLevel::LX || dev == kNoDevice || dist(3 + w, n) < r) {
          r = dist(3 + w, n);
          dev = via(3 + w, n);
        }
        v = LogicLevel::LX;
      }
    }
    schedule(n, v, dev, t);
  }

  void schedule(std::uint32_t n, LogicLevel target, std::uint32_t dev, double t) {
    auto& p = pending_[n];
    LogicLevel expected = p.active ? p.value : value_[n];
    if (target == expected) return;
    p.active = false;
    ++p.gen;
    if (target == value_[n]) return;  // cancelled a pending change
    double delay = 0.0;
    if (dev != kNoDevice)
      delay = gate_delay(topo_->cap[n], params_.vdd_V, 1.0 / inv_k_[dev], vth_max_[dev], params_.alpha);
    p.active = true;
    p.value = target;
    queue_.push({t + delay, seq_++, n, target, p.gen});
  }

  void resolve_virtual_rail(std::uint32_t rail, double t) {
    const auto& topo = *topo_;
    bool s0 = false, s1 = false, sx = false;
    double delay = 0.0;
    for (auto di : topo.channel[rail]) {
      const auto& d = netlist_->devices[di];
      if (!d.is_sleep) continue;
      auto other = d.source.value == rail ? d.drain.value : d.source.value;
      if (!is_rail(netlist_->nets[other].kind)) continue;
      auto c = cond(di);
      if (c == Conduction::Off) continue;
      if (c == Conduction::Unknown) {
        sx = true;
        continue;
      }
      note_source(value_[other], s0, s1, sx);
      double dd = gate_delay(topo.cap[rail], params_.vdd_V, device_drive(d, params_),
                             params_.vth(d.vth_class), params_.alpha);
      delay = delay == 0.0 ? dd : std::min(delay, dd);
    }
    LogicLevel v = combine(s0, s1, sx);
    auto& p = pending_[rail];
    LogicLevel expected = p.active ? p.value : value_[rail];
    if (v == expected) return;
    p.active = false;
    ++p.gen;
    if (v == value_[rail]) return;
    p.active = true;
    p.value = v;
    queue_.push({t + (is_definite(v) ? delay : 0.0), seq_++, rail, v, p.gen});
  }

  static void note_source(LogicLevel v, bool& s0, bool& s1, bool& sx) {
    switch (v) {
      case LogicLevel::L0: s0 = true; break;
      case LogicLevel::L1: s1 = true; break;
      case LogicLevel::LX: sx = true; break;
      case LogicLevel::LZ: break;
    }
  }

  // Least-resistance paths into the current component from sources of one
  // value (k % 3: L0, L1, LX), through conducting devices only (k < 3) or
  // also through uncertain ones. A device's resistance is its slowness;
  // inv_k_ and vth_max_ accumulate the chosen path's series drive and
  // highest threshold for the stage delay.
  void path_search(int k) {
    const auto& topo = *topo_;
    const LogicLevel value = static_cast<LogicLevel>(k % 3);
    const bool uncertain = k >= 3;
    const std::size_t base = k * value_.size();
    using Item = std::pair<double, std::uint32_t>;
    heap_.clear();
    auto usable = [&](std::uint32_t di) {
      auto c = cond(di);
      return c == Conduction::On || (uncertain && c == Conduction::Unknown);
    };
    auto resistance = [&](std::uint32_t di) {
      auto type = netlist_->devices[di].device_type;
      bool degraded = (type == DeviceType::NMOS && value == LogicLevel::L1) ||
                      (type == DeviceType::PMOS && value == LogicLevel::L0);
      return degraded ? topo.slowness[di] * options_.degraded_pass_factor : topo.slowness[di];
    };
    auto relax = [&](std::uint32_t n, double d, double inv_k, double vth) {
      std::size_t i = base + n;
      if (dist_mark_[i] != dist_stamp_ || d < dist_[i]) {
        dist_mark_[i] = dist_stamp_;
        dist_[i] = d;
        inv_k_[i] = inv_k;
        vth_max_[i] = vth;
        heap_.push_back({d, n});
        std::push_heap(heap_.begin(), heap_.end(), std::greater<Item>());
      }
    };
    for (auto n : comp_) {
      for (auto di : topo.channel[n]) {
        if (!usable(di)) continue;
        const auto& dev = netlist_->devices[di];
        auto other = dev.source.value == n ? dev.drain.value : dev.source.value;
        if (topo.source[other] && value_[other] == value)
          relax(n, resistance(di), topo.inv_drive[di], topo.vth[di]);
      }
    }
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<Item>());
      auto [d, n] = heap_.back();
      heap_.pop_back();
      if (d > dist_[base + n]) continue;
      for (auto di : topo.channel[n]) {
        if (!usable(di)) continue;
        const auto& dev = netlist_->devices[di];
        auto other = dev.source.value == n ? dev.drain.value : dev.source.value;
        if (topo.source[other] || mark_[other] != stamp_) continue;
        relax(other, d + resistance(di), inv_k_[base + n] + topo.inv_drive[di],
              std::max(vth_max_[base + n], topo.vth[di]));
      }
    }
  }

  const Netlist* netlist_;
  ProcessParams params_;
  SimOptions options_;
  std::shared_ptr<const sim_detail::Topology> topo_;

  std::vector<LogicLevel> value_;
  std::vector<LogicLevel> last_definite_;
  std::vector<Pending> pending_;
  std::vector<double> last_transition_;
  std::priority_queue<sim_detail::Queued, std::vector<sim_detail::Queued>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  double now_ = 0.0;
  bool initialized_ = false;

  // Scratch for resolve().
  std::uint64_t stamp_ = 0;
  std::vector<std::uint64_t> mark_;
  std::vector<std::uint64_t> sub_mark_;
  std::vector<std::uint32_t> comp_;
  std::vector<std::uint32_t> sub_;
  std::vector<LogicLevel> charge_;
  std::vector<LogicLevel> rail_charge_;  // last driven value of each virtual rail
  std::vector<std::pair<double, std::uint32_t>> heap_;
  std::uint64_t group_stamp_ = 0;
  std::vector<std::uint64_t> group_mark_;
  std::uint64_t dist_stamp_ = 0;
  std::vector<double> dist_;
  std::vector<std::uint64_t> dist_mark_;
  std::vector<double> inv_k_;
  std::vector<double> vth_max_;

  bool tracing_ = false;
  double trace_origin_ = 0.0;
  double interval_start_ = 0.0;
  double interval_leak_ = 0.0;
  PowerTrace trace_;
  std::unordered_map<std::string, double> leak_cache_;
};

// Builds the initial state: rails pinned, every other net LX, empty queue.
// The netlist must outlive the state.
inline SimState init(const Netlist& netlist, const ProcessParams& params,
                     SimOptions options = {}) {
  return SimState(netlist, params, options);
}

// time_s,net,value rows for a list of applied events.
inline std::string event_trace_csv(const Netlist& nl, std::span<const Event> events) {
  std::string out = "time_s,net,value\n";
  for (const auto& e : events) {
    out += format_real(e.time_s);
    out += ',';
    out += nl.net(e.net).name;
    out += ',';
    out += to_char(e.new_value);
    out += '\n';
  }
  return out;
}

}  // namespace gvn
