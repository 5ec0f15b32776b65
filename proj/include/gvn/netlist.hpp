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

// Flat transistor-level circuit model.
//
// A Netlist owns its nets and devices by value. Nets are addressed by a dense
// NetId (index into Netlist::nets); names are unique. Hierarchy exists only at
// construction time: instantiate() copies a cell into a parent with a name
// prefix, so simulation and analysis always see a flat graph.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gvn {

class NetlistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DeviceType : std::uint8_t { NMOS, PMOS };
enum class VthClass : std::uint8_t { Low, High };

enum class NetKind : std::uint8_t {
  Signal,
  RailVdd,
  RailGnd,
  VirtualVdd,
  VirtualGnd,
  Input,
  Output,
  Clock,
};

struct NetId {
  std::uint32_t value = 0;
  friend auto operator<=>(const NetId&, const NetId&) = default;
};

struct ChannelGeometry {
  double width_m = 90e-9;
  double length_m = 45e-9;
  double aspect() const { return width_m / length_m; }
  friend bool operator==(const ChannelGeometry&, const ChannelGeometry&) = default;
};

struct Transistor {
  std::string name;
  DeviceType device_type = DeviceType::NMOS;
  VthClass vth_class = VthClass::Low;
  ChannelGeometry geometry;
  NetId gate;
  NetId source;
  NetId drain;
  bool is_sleep = false;
  // Gate capacitance this device presents to the net driving its gate.
  double load_cap_F = 0.0;
  friend bool operator==(const Transistor&, const Transistor&) = default;
};

struct Net {
  NetId id;
  std::string name;
  NetKind kind = NetKind::Signal;
  friend bool operator==(const Net&, const Net&) = default;
};

inline bool is_rail(NetKind k) {
  return k == NetKind::RailVdd || k == NetKind::RailGnd ||
         k == NetKind::VirtualVdd || k == NetKind::VirtualGnd;
}

inline bool is_virtual_rail(NetKind k) {
  return k == NetKind::VirtualVdd || k == NetKind::VirtualGnd;
}

// Nets whose value is imposed from outside the channel graph.
inline bool is_source_kind(NetKind k) {
  return k == NetKind::RailVdd || k == NetKind::RailGnd ||
         k == NetKind::Input || k == NetKind::Clock;
}

inline std::string_view to_string(NetKind k) {
  switch (k) {
    case NetKind::Signal: return "signal";
    case NetKind::RailVdd: return "vdd";
    case NetKind::RailGnd: return "gnd";
    case NetKind::VirtualVdd: return "vvdd";
    case NetKind::VirtualGnd: return "vgnd";
    case NetKind::Input: return "input";
    case NetKind::Output: return "output";
    case NetKind::Clock: return "clock";
  }
  return "?";
}

inline std::optional<NetKind> net_kind_from_string(std::string_view s) {
  for (auto k : {NetKind::Signal, NetKind::RailVdd, NetKind::RailGnd,
                 NetKind::VirtualVdd, NetKind::VirtualGnd, NetKind::Input,
                 NetKind::Output, NetKind::Clock}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

class Netlist {
 public:
  std::vector<Net> nets;
  std::vector<Transistor> devices;
  std::vector<NetId> input_ports;
  std::vector<NetId> output_ports;
  std::vector<NetId> clock_ports;
  std::map<NetId, std::string> cluster_of;

  friend bool operator==(const Netlist& a, const Netlist& b) {
    return a.nets == b.nets && a.devices == b.devices &&
           a.input_ports == b.input_ports && a.output_ports == b.output_ports &&
           a.clock_ports == b.clock_ports && a.cluster_of == b.cluster_of;
  }

  std::size_t net_count() const { return nets.size(); }
  const Net& net(NetId id) const { return nets.at(id.value); }
  bool has_net(NetId id) const { return id.value < nets.size(); }

  NetId add_net(std::string name, NetKind kind) {
    if (find_net(name)) throw NetlistError("duplicate net '" + name + "'");
    NetId id{static_cast<std::uint32_t>(nets.size())};
    nets.push_back(Net{id, name, kind});
    name_index_.emplace(std::move(name), id);
    return id;
  }

  // Returns the named net, creating it with `kind` if absent.
  NetId ensure_net(const std::string& name, NetKind kind) {
    if (auto id = find_net(name)) return *id;
    return add_net(name, kind);
  }

  std::optional<NetId> find_net(std::string_view name) const {
    if (name_index_.size() != nets.size()) rebuild_index();
    auto it = name_index_.find(std::string(name));
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
  }

  NetId net_id(std::string_view name) const {
    auto id = find_net(name);
    if (!id) throw NetlistError("no net named '" + std::string(name) + "'");
    return *id;
  }

  void add_port(NetId id) {
    switch (net(id).kind) {
      case NetKind::Input: input_ports.push_back(id); break;
      case NetKind::Output: output_ports.push_back(id); break;
      case NetKind::Clock: clock_ports.push_back(id); break;
      default:
        throw NetlistError("net '" + net(id).name + "' cannot be a port");
    }
  }

  Transistor& add_device(Transistor t) {
    devices.push_back(std::move(t));
    return devices.back();
  }

  std::optional<NetId> rail(NetKind kind) const {
    for (const auto& n : nets)
      if (n.kind == kind) return n.id;
    return std::nullopt;
  }

  const Transistor* find_device(std::string_view name) const {
    for (const auto& d : devices)
      if (d.name == name) return &d;
    return nullptr;
  }

 private:
  void rebuild_index() const {
    name_index_.clear();
    for (const auto& n : nets) name_index_.emplace(n.name, n.id);
  }
  mutable std::unordered_map<std::string, NetId> name_index_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity : std::uint8_t { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string rule;     // stable rule id, e.g. "unresolved-terminal"
  std::string subject;  // device or net name
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  std::size_t error_count() const { return count(Severity::Error); }
  std::size_t warning_count() const { return count(Severity::Warning); }
  bool ok() const { return error_count() == 0; }

 private:
  std::size_t count(Severity s) const {
    std::size_t n = 0;
    for (const auto& f : findings) n += f.severity == s;
    return n;
  }
};

inline ValidationReport validate(const Netlist& netlist) {
  ValidationReport report;
  auto error = [&](std::string rule, std::string subject, std::string msg) {
    report.findings.push_back(
        {Severity::Error, std::move(rule), std::move(subject), std::move(msg)});
  };
  auto warn = [&](std::string rule, std::string subject, std::string msg) {
    report.findings.push_back(
        {Severity::Warning, std::move(rule), std::move(subject), std::move(msg)});
  };

  std::unordered_set<std::string> net_names;
  int vdd_rails = 0;
  int gnd_rails = 0;
  for (std::size_t i = 0; i < netlist.nets.size(); ++i) {
    const Net& n = netlist.nets[i];
    if (n.id.value != i)
      error("net-id", n.name, "net id does not match its position");
    if (!net_names.insert(n.name).second)
      error("duplicate-net", n.name, "net name declared twice");
    vdd_rails += n.kind == NetKind::RailVdd;
    gnd_rails += n.kind == NetKind::RailGnd;
  }
  if (vdd_rails > 1) error("multiple-rails", "vdd", "more than one RailVdd net");
  if (gnd_rails > 1) error("multiple-rails", "gnd", "more than one RailGnd net");

  auto check_ports = [&](const std::vector<NetId>& ports, NetKind want) {
    for (NetId p : ports) {
      if (!netlist.has_net(p)) {
        error("unresolved-port", std::to_string(p.value), "port references no net");
      } else if (netlist.net(p).kind != want) {
        error("port-kind", netlist.net(p).name, "port net kind does not match port list");
      }
    }
  };
  check_ports(netlist.input_ports, NetKind::Input);
  check_ports(netlist.output_ports, NetKind::Output);
  check_ports(netlist.clock_ports, NetKind::Clock);

  for (const auto& [id, tag] : netlist.cluster_of) {
    if (!netlist.has_net(id))
      error("unresolved-cluster", tag, "cluster tag references no net");
  }

  std::unordered_set<std::string> device_names;
  for (const auto& d : netlist.devices) {
    if (!device_names.insert(d.name).second)
      error("duplicate-device", d.name, "device name declared twice");
    if (!(d.geometry.width_m > 0) || !(d.geometry.length_m > 0))
      error("geometry", d.name, "channel width and length must be positive");
    if (d.load_cap_F < 0) error("load-cap", d.name, "negative load capacitance");
    bool resolved = true;
    for (NetId t : {d.gate, d.source, d.drain}) {
      if (!netlist.has_net(t)) {
        error("unresolved-terminal", d.name, "terminal references undeclared net");
        resolved = false;
      }
    }
    if (resolved && d.is_sleep && !is_rail(netlist.net(d.source).kind) &&
        !is_rail(netlist.net(d.drain).kind)) {
      warn("sleep-off-rail", d.name, "sleep transistor not on rail");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Hierarchical composition

// Copies `cell` into `parent`. Every port of the cell must appear in
// `binding` (cell net name -> parent net name). Cell rail nets may be bound
// explicitly (e.g. a cell ground onto a virtual ground); unbound rails merge
// with the parent's rail of the same kind, which is created if missing.
// Internal nets and devices are copied as "<prefix>/<name>".
inline Netlist instantiate(const Netlist& parent, const Netlist& cell,
                           const std::map<std::string, std::string>& binding,
                           const std::string& prefix) {
  Netlist out = parent;
  std::vector<NetId> remap(cell.nets.size());

  auto is_port = [&](NetId id) {
    auto in = [&](const std::vector<NetId>& v) {
      for (NetId p : v)
        if (p == id) return true;
      return false;
    };
    return in(cell.input_ports) || in(cell.output_ports) || in(cell.clock_ports);
  };

  for (const Net& n : cell.nets) {
    auto bound = binding.find(n.name);
    if (bound != binding.end()) {
      auto target = out.find_net(bound->second);
      if (!target)
        throw NetlistError("binding of '" + n.name + "' names unknown parent net '" +
                           bound->second + "'");
      remap[n.id.value] = *target;
      continue;
    }
    if (is_port(n.id))
      throw NetlistError("unbound port '" + n.name + "' instantiating '" + prefix + "'");
    if (n.kind == NetKind::RailVdd || n.kind == NetKind::RailGnd) {
      auto rail = out.rail(n.kind);
      remap[n.id.value] = rail ? *rail : out.add_net(n.name, n.kind);
      continue;
    }
    std::string name = prefix + "/" + n.name;
    if (out.find_net(name))
      throw NetlistError("name collision on net '" + name + "'");
    remap[n.id.value] = out.add_net(name, n.kind);
  }

  std::unordered_set<std::string> existing;
  for (const auto& d : out.devices) existing.insert(d.name);
  for (const Transistor& d : cell.devices) {
    Transistor copy = d;
    copy.name = prefix + "/" + d.name;
    if (!existing.insert(copy.name).second)
      throw NetlistError("name collision on device '" + copy.name + "'");
    copy.gate = remap[d.gate.value];
    copy.source = remap[d.source.value];
    copy.drain = remap[d.drain.value];
    out.devices.push_back(std::move(copy));
  }

  for (const auto& [id, tag] : cell.cluster_of) {
    out.cluster_of.emplace(remap[id.value], tag);
  }
  return out;
}

// Name of the logic gate a device belongs to. Generated device names have the
// form "<path>/<gate>.<device>"; the gate is everything before the last '.'.
inline std::string_view gate_of(std::string_view device_name) {
  auto dot = device_name.rfind('.');
  auto slash = device_name.rfind('/');
  if (dot == std::string_view::npos ||
      (slash != std::string_view::npos && slash > dot))
    return device_name;
  return device_name.substr(0, dot);
}

// Per-net capacitive load: gate loads of all devices gated by the net plus a
// uniform wire capacitance.
inline std::vector<double> net_load_caps(const Netlist& netlist, double wire_cap_F) {
  std::vector<double> caps(netlist.nets.size(), wire_cap_F);
  for (const auto& d : netlist.devices) caps.at(d.gate.value) += d.load_cap_F;
  return caps;
}

// A transmission gate is an NMOS/PMOS pair sharing both channel terminals.
inline std::vector<bool> transmission_gate_devices(const Netlist& netlist) {
  std::vector<bool> tg(netlist.devices.size(), false);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> by_channel;
  for (std::size_t i = 0; i < netlist.devices.size(); ++i) {
    const auto& d = netlist.devices[i];
    if (d.is_sleep) continue;
    auto key = std::minmax(d.source.value, d.drain.value);
    by_channel[{key.first, key.second}].push_back(i);
  }
  for (const auto& [key, ids] : by_channel) {
    bool has_n = false, has_p = false;
    for (auto i : ids) {
      has_n |= netlist.devices[i].device_type == DeviceType::NMOS;
      has_p |= netlist.devices[i].device_type == DeviceType::PMOS;
    }
    if (has_n && has_p)
      for (auto i : ids) tg[i] = true;
  }
  return tg;
}

}  // namespace gvn
