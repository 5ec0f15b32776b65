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

// Line-oriented netlist text format (.gvn).
//
//   # comment to end of line
//   NET <name> <signal|vdd|gnd|vvdd|vgnd|input|output|clock>
//   PORT <in|out|clk> <net>
//   M <name> <NMOS|PMOS> <gate> <src> <drn> W=<m> L=<m> VTH=<LOW|HIGH> SLEEP=<0|1> CL=<F>
//   CLUSTER <net> <tag>
//
// Nets must be declared before they are referenced. serialize() emits the
// canonical form: NET lines, then PORT lines (in, out, clk), then devices,
// then CLUSTER lines; reals as 6-significant-digit scientific notation; LF.

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gvn/netlist.hpp"

namespace gvn {

struct ParseError {
  int line_number = 0;  // 1-based
  int column = 0;       // 1-based
  std::string message;
  std::string offending_text;
};

struct ParseResult {
  std::optional<Netlist> netlist;
  std::vector<ParseError> errors;
  bool ok() const { return netlist.has_value(); }
};

// Fixed 6-significant-digit scientific notation, e.g. 9.00000e-08.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

namespace format_detail {

struct Token {
  std::string_view text;
  int column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace format_detail

inline ParseResult parse_netlist(std::string_view text) {
  using format_detail::Token;
  ParseResult result;
  Netlist nl;
  std::unordered_set<std::string> device_names;

  auto fail = [&](int line, const Token& tok, std::string msg) {
    result.errors.push_back({line, tok.column, std::move(msg), std::string(tok.text)});
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto toks = format_detail::tokenize(line);
    if (toks.empty()) continue;

    const Token& head = toks[0];
    auto resolve = [&](const Token& t) -> std::optional<NetId> {
      auto id = nl.find_net(t.text);
      if (!id) fail(line_no, t, "unresolved reference");
      return id;
    };

    if (head.text == "NET") {
      if (toks.size() != 3) {
        fail(line_no, toks.back(), "malformed field");
        continue;
      }
      auto kind = net_kind_from_string(toks[2].text);
      if (!kind) {
        fail(line_no, toks[2], "malformed field");
        continue;
      }
      if (nl.find_net(toks[1].text)) {
        fail(line_no, toks[1], "duplicate name");
        continue;
      }
      if ((*kind == NetKind::RailVdd || *kind == NetKind::RailGnd) && nl.rail(*kind)) {
        fail(line_no, toks[2], "second rail of this kind");
        continue;
      }
      nl.add_net(std::string(toks[1].text), *kind);
    } else if (head.text == "PORT") {
      if (toks.size() != 3) {
        fail(line_no, toks.back(), "malformed field");
        continue;
      }
      NetKind want;
      if (toks[1].text == "in") want = NetKind::Input;
      else if (toks[1].text == "out") want = NetKind::Output;
      else if (toks[1].text == "clk") want = NetKind::Clock;
      else {
        fail(line_no, toks[1], "malformed field");
        continue;
      }
      auto id = resolve(toks[2]);
      if (!id) continue;
      if (nl.net(*id).kind != want) {
        fail(line_no, toks[2], "port kind does not match net kind");
        continue;
      }
      nl.add_port(*id);
    } else if (head.text == "M") {
      if (toks.size() != 11) {
        fail(line_no, toks.size() > 1 ? toks.back() : head, "malformed field");
        continue;
      }
      Transistor t;
      t.name = std::string(toks[1].text);
      bool good = true;
      if (toks[2].text == "NMOS") t.device_type = DeviceType::NMOS;
      else if (toks[2].text == "PMOS") t.device_type = DeviceType::PMOS;
      else {
        fail(line_no, toks[2], "malformed field");
        good = false;
      }
      auto g = resolve(toks[3]);
      auto s = resolve(toks[4]);
      auto d = resolve(toks[5]);
      good = good && g && s && d;

      auto field = [&](const Token& tok, std::string_view key) -> std::optional<std::string_view> {
        if (tok.text.size() <= key.size() || tok.text.substr(0, key.size()) != key) {
          fail(line_no, tok, "malformed field");
          return std::nullopt;
        }
        return tok.text.substr(key.size());
      };
      auto real = [&](const Token& tok, std::string_view key) -> std::optional<double> {
        auto body = field(tok, key);
        if (!body) return std::nullopt;
        auto v = format_detail::parse_double(*body);
        if (!v) fail(line_no, tok, "malformed field");
        return v;
      };
      auto w = real(toks[6], "W=");
      auto l = real(toks[7], "L=");
      auto vth = field(toks[8], "VTH=");
      auto sleep = field(toks[9], "SLEEP=");
      auto cl = real(toks[10], "CL=");
      good = good && w && l && vth && sleep && cl;
      if (vth) {
        if (*vth == "LOW") t.vth_class = VthClass::Low;
        else if (*vth == "HIGH") t.vth_class = VthClass::High;
        else {
          fail(line_no, toks[8], "malformed field");
          good = false;
        }
      }
      if (sleep) {
        if (*sleep == "0" || *sleep == "1") t.is_sleep = *sleep == "1";
        else {
          fail(line_no, toks[9], "malformed field");
          good = false;
        }
      }
      if (w && l && (!(*w > 0) || !(*l > 0))) {
        fail(line_no, toks[6], "malformed field");
        good = false;
      }
      if (cl && *cl < 0) {
        fail(line_no, toks[10], "malformed field");
        good = false;
      }
      if (!good) continue;
      if (!device_names.insert(t.name).second) {
        fail(line_no, toks[1], "duplicate name");
        continue;
      }
      t.gate = *g;
      t.source = *s;
      t.drain = *d;
      t.geometry = {*w, *l};
      t.load_cap_F = *cl;
      nl.add_device(std::move(t));
    } else if (head.text == "CLUSTER") {
      if (toks.size() != 3) {
        fail(line_no, toks.back(), "malformed field");
        continue;
      }
      auto id = resolve(toks[1]);
      if (!id) continue;
      if (!nl.cluster_of.emplace(*id, std::string(toks[2].text)).second)
        fail(line_no, toks[1], "duplicate name");
    } else {
      fail(line_no, head, "unknown directive");
    }
  }

  if (result.errors.empty()) {
    // Anything the line checks cannot see (e.g. sleep-off-rail warnings) is
    // left to validate(); errors here would indicate a parser gap.
    auto report = validate(nl);
    for (const auto& f : report.findings) {
      if (f.severity == Severity::Error)
        result.errors.push_back({line_no > 0 ? line_no : 1, 1, f.rule + ": " + f.message, f.subject});
    }
  }
  if (result.errors.empty()) result.netlist = std::move(nl);
  return result;
}

inline std::string serialize_netlist(const Netlist& nl) {
  if (!validate(nl).ok()) throw NetlistError("cannot serialize an invalid netlist");
  std::string out;
  auto line = [&](std::initializer_list<std::string_view> parts) {
    bool first = true;
    for (auto p : parts) {
      if (!first) out += ' ';
      out += p;
      first = false;
    }
    out += '\n';
  };
  for (const auto& n : nl.nets) line({"NET", n.name, to_string(n.kind)});
  for (auto id : nl.input_ports) line({"PORT", "in", nl.net(id).name});
  for (auto id : nl.output_ports) line({"PORT", "out", nl.net(id).name});
  for (auto id : nl.clock_ports) line({"PORT", "clk", nl.net(id).name});
  for (const auto& d : nl.devices) {
    std::string w = "W=" + format_real(d.geometry.width_m);
    std::string l = "L=" + format_real(d.geometry.length_m);
    std::string cl = "CL=" + format_real(d.load_cap_F);
    line({"M", d.name, d.device_type == DeviceType::NMOS ? "NMOS" : "PMOS",
          nl.net(d.gate).name, nl.net(d.source).name, nl.net(d.drain).name, w, l,
          d.vth_class == VthClass::Low ? "VTH=LOW" : "VTH=HIGH",
          d.is_sleep ? "SLEEP=1" : "SLEEP=0", cl});
  }
  for (const auto& [id, tag] : nl.cluster_of) line({"CLUSTER", nl.net(id).name, tag});
  return out;
}

}  // namespace gvn
