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

#include <cstdint>
#include <optional>

#include "gvn/netlist.hpp"

namespace gvn {

// L0/L1 are driven logic values, LX is unknown or contending, LZ undriven.
enum class LogicLevel : std::uint8_t { L0, L1, LX, LZ };

inline bool is_definite(LogicLevel v) { return v == LogicLevel::L0 || v == LogicLevel::L1; }

inline char to_char(LogicLevel v) {
  switch (v) {
    case LogicLevel::L0: return '0';
    case LogicLevel::L1: return '1';
    case LogicLevel::LX: return 'X';
    case LogicLevel::LZ: return 'Z';
  }
  return '?';
}

inline std::optional<LogicLevel> logic_from_char(char c) {
  switch (c) {
    case '0': return LogicLevel::L0;
    case '1': return LogicLevel::L1;
    case 'x': case 'X': return LogicLevel::LX;
    case 'z': case 'Z': return LogicLevel::LZ;
    default: return std::nullopt;
  }
}

inline LogicLevel from_bool(bool b) { return b ? LogicLevel::L1 : LogicLevel::L0; }

enum class Conduction : std::uint8_t { Off, On, Unknown };

inline Conduction conduction(DeviceType type, LogicLevel gate) {
  if (!is_definite(gate)) return Conduction::Unknown;
  bool high = gate == LogicLevel::L1;
  return (type == DeviceType::NMOS) == high ? Conduction::On : Conduction::Off;
}

}  // namespace gvn
