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

// Process and physical parameters, plus the flat key=value parameter file.
//
// The defaults below are a calibration of the switch-level model against the
// relative power/delay behaviour of a 45 nm, 1 V low-power process. They are
// not foundry numbers.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gvn/netlist.hpp"
#include "gvn/netlist_format.hpp"

namespace gvn {

class ParamsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProcessParams {
  double temperature_K = 300.0;
  double boltzmann_J_per_K = 1.380649e-23;
  double charge_C = 1.602176634e-19;
  double n_prime = 1.5;
  double mu0_m2_per_Vs = 0.03;
  double cox_F_per_m2 = 0.07;
  double gamma = 1.0;
  double vth_low_V = 0.22;
  double vth_high_V = 0.45;
  double vdd_V = 1.0;
  double alpha = 1.3;
  // Drive factor K of the delay model for a device of aspect drive_ref_aspect.
  double k_drive = 8.0e-5;
  double stack_factor = 0.2;
  double wire_cap_F = 0.14e-15;
  // W/L at which a device delivers exactly k_drive.
  double drive_ref_aspect = 2.0;

  double thermal_voltage() const { return boltzmann_J_per_K * temperature_K / charge_C; }

  double vth(VthClass c) const { return c == VthClass::Low ? vth_low_V : vth_high_V; }

  friend bool operator==(const ProcessParams&, const ProcessParams&) = default;
};

namespace params_detail {

using Field = std::pair<std::string_view, double ProcessParams::*>;

inline const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"temperature_K", &ProcessParams::temperature_K},
      {"boltzmann_J_per_K", &ProcessParams::boltzmann_J_per_K},
      {"charge_C", &ProcessParams::charge_C},
      {"n_prime", &ProcessParams::n_prime},
      {"mu0_m2_per_Vs", &ProcessParams::mu0_m2_per_Vs},
      {"cox_F_per_m2", &ProcessParams::cox_F_per_m2},
      {"gamma", &ProcessParams::gamma},
      {"vth_low_V", &ProcessParams::vth_low_V},
      {"vth_high_V", &ProcessParams::vth_high_V},
      {"vdd_V", &ProcessParams::vdd_V},
      {"alpha", &ProcessParams::alpha},
      {"k_drive", &ProcessParams::k_drive},
      {"stack_factor", &ProcessParams::stack_factor},
      {"wire_cap_F", &ProcessParams::wire_cap_F},
      {"drive_ref_aspect", &ProcessParams::drive_ref_aspect},
  };
  return f;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace params_detail

// Throws ParamsError naming the first violated invariant.
inline void check(const ProcessParams& p) {
  for (const auto& [name, member] : params_detail::fields()) {
    if (!(p.*member > 0)) throw ParamsError(std::string(name) + " must be > 0");
  }
  if (!(p.vth_low_V < p.vth_high_V)) throw ParamsError("vth_low_V must be < vth_high_V");
  if (!(p.vth_high_V < p.vdd_V)) throw ParamsError("vth_high_V must be < vdd_V");
  if (p.alpha < 1.0 || p.alpha > 2.0) throw ParamsError("alpha must lie in [1, 2]");
  if (p.stack_factor > 1.0) throw ParamsError("stack_factor must lie in (0, 1]");
}

// Keys not present keep their default. Unknown keys are errors.
inline ProcessParams parse_params(std::string_view text) {
  ProcessParams p;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = params_detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParamsError("line " + std::to_string(line_no) + ": expected key=value");
    auto key = params_detail::trim(line.substr(0, eq));
    auto val = params_detail::trim(line.substr(eq + 1));
    bool found = false;
    for (const auto& [name, member] : params_detail::fields()) {
      if (name != key) continue;
      auto v = format_detail::parse_double(val);
      if (!v)
        throw ParamsError("line " + std::to_string(line_no) + ": bad value for " +
                          std::string(key));
      p.*member = *v;
      found = true;
    }
    if (!found)
      throw ParamsError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
  }
  check(p);
  return p;
}

inline ProcessParams load_params(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamsError("cannot open parameter file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

inline std::string serialize_params(const ProcessParams& p) {
  std::string out;
  for (const auto& [name, member] : params_detail::fields()) {
    out += name;
    out += '=';
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, p.*member);  // shortest round trip
    out.append(buf, r.ptr);
    out += '\n';
  }
  return out;
}

// 64-bit FNV-1a, printed as 16 hex digits. Used to stamp reports with the
// parameter content they were produced from.
inline std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gvn
