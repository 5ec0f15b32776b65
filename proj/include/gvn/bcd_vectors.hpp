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

// Decimal operands, the reference adder, and the mapping between operands
// and the port nets of a generated BCD adder (a0..a3, b0..b3, cin in;
// digit0..digit3, carry out; bit 0 is least significant).

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gvn/logic.hpp"
#include "gvn/netlist.hpp"

namespace gvn {

struct BcdVector {
  int a = 0;
  int b = 0;
  int cin = 0;
  friend bool operator==(const BcdVector&, const BcdVector&) = default;
};

struct BcdResult {
  int carry = 0;
  int digit = 0;
  friend bool operator==(const BcdResult&, const BcdResult&) = default;
};

inline BcdResult bcd_add_oracle(int a, int b, int cin) {
  if (a < 0 || a > 9 || b < 0 || b > 9) throw std::out_of_range("bcd_add_oracle: digit outside 0-9");
  if (cin != 0 && cin != 1) throw std::out_of_range("bcd_add_oracle: carry-in must be 0 or 1");
  int s = a + b + cin;
  return {s >= 10 ? 1 : 0, s % 10};
}

inline BcdResult bcd_add_oracle(const BcdVector& v) { return bcd_add_oracle(v.a, v.b, v.cin); }

// All 200 legal operand triples, a-major, then b, then cin.
inline std::vector<BcdVector> legal_vectors() {
  std::vector<BcdVector> v;
  v.reserve(200);
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 2; ++c) v.push_back({a, b, c});
  return v;
}

// Nine input assignments driving the operand ports.
inline std::vector<std::pair<NetId, LogicLevel>> vector_assignments(const Netlist& nl,
                                                                    const BcdVector& v) {
  std::vector<std::pair<NetId, LogicLevel>> in;
  in.reserve(9);
  for (int i = 0; i < 4; ++i) in.push_back({nl.net_id("a" + std::to_string(i)), from_bool(v.a >> i & 1)});
  for (int i = 0; i < 4; ++i) in.push_back({nl.net_id("b" + std::to_string(i)), from_bool(v.b >> i & 1)});
  in.push_back({nl.net_id("cin"), from_bool(v.cin != 0)});
  return in;
}

// Reads (carry, digit) from net values; nullopt if any output bit is not
// a definite level. The digit may exceed 9 on a faulty circuit.
inline std::optional<BcdResult> decode_outputs(const Netlist& nl, std::span<const LogicLevel> values) {
  BcdResult r;
  for (int i = 0; i < 4; ++i) {
    LogicLevel v = values[nl.net_id("digit" + std::to_string(i)).value];
    if (!is_definite(v)) return std::nullopt;
    if (v == LogicLevel::L1) r.digit |= 1 << i;
  }
  LogicLevel c = values[nl.net_id("carry").value];
  if (!is_definite(c)) return std::nullopt;
  r.carry = c == LogicLevel::L1;
  return r;
}

// Output bits as text, carry first: e.g. "1 0111". X/Z bits print as such.
inline std::string output_string(const Netlist& nl, std::span<const LogicLevel> values) {
  std::string s(1, to_char(values[nl.net_id("carry").value]));
  s += ' ';
  for (int i = 3; i >= 0; --i) s += to_char(values[nl.net_id("digit" + std::to_string(i)).value]);
  return s;
}

}  // namespace gvn
