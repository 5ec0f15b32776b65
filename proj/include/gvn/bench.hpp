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

// Functional verification against the decimal oracle, power/delay sweeps,
// and report emission.
//
// Average power: a seeded stream of uniformly drawn legal vectors, one per
// clock period, after one untraced warm-up cycle.
// Worst delay: the slowest output settle over all 200 vectors, each applied
// in active mode from the all-zero and the all-nine operands.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gvn/bcd_vectors.hpp"
#include "gvn/gating.hpp"
#include "gvn/generators.hpp"
#include "gvn/netlist_format.hpp"
#include "gvn/power_model.hpp"
#include "gvn/process_params.hpp"
#include "gvn/switch_sim.hpp"

namespace gvn {

class BenchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Virtual-rail charge booked per wake of a gated cluster, in farads.
inline constexpr double kDefaultWakeCap_F = 0.5e-15;

struct BenchOptions {
  std::uint64_t seed = 1;
  int cycles = 1000;
  double duty_guard = 0.1;
  double wake_cap_F = kDefaultWakeCap_F;
};

// ---------------------------------------------------------------------------
// Verification

struct Counterexample {
  BcdVector vector;
  BcdResult expected;
  std::string observed;  // carry and digit bits as read, e.g. "1 0111" or "X 01X1"
};

struct VerifyResult {
  enum class Status { Pass, Fail, Infeasible };
  Status status = Status::Pass;
  int vectors = 0;
  int matched = 0;
  std::vector<Counterexample> counterexamples;
  std::optional<ClockConfig> clock;
  std::string message;

  bool passed() const { return status == Status::Pass; }
};

inline std::string_view to_string(VerifyResult::Status s) {
  switch (s) {
    case VerifyResult::Status::Pass: return "pass";
    case VerifyResult::Status::Fail: return "fail";
    case VerifyResult::Status::Infeasible: return "infeasible";
  }
  return "?";
}

namespace bench_detail {

inline bool is_gated(const Netlist& nl) { return nl.clock_ports.size() == 2; }

inline std::vector<std::pair<NetId, LogicLevel>> with_clocks(
    const Netlist& nl, std::vector<std::pair<NetId, LogicLevel>> in, LogicLevel level) {
  for (NetId c : nl.clock_ports) in.push_back({c, level});
  return in;
}

}  // namespace bench_detail

// Runs the 200 legal vectors as one stream, one vector per clock period, and
// compares the outputs read at the end of each period (gated netlists: at
// the scheduled sample instant) with the oracle.
inline VerifyResult verify_netlist(const Netlist& nl, const ProcessParams& pp, double freq_Hz,
                                   double duty_guard = 0.1) {
  if (!(freq_Hz > 0)) throw BenchError("verify: frequency must be > 0");
  VerifyResult r;
  const auto vectors = legal_vectors();
  const int n = static_cast<int>(vectors.size());
  const double period = 1.0 / freq_Hz;
  SimState s(nl, pp);

  std::vector<double> sample;
  if (bench_detail::is_gated(nl)) {
    auto sd = characterize_stage_delays(nl, pp);
    try {
      r.clock = derive_clock_config(freq_Hz, sd.stage1_s, sd.stage2_s, duty_guard);
    } catch (const TimingInfeasible& e) {
      r.status = VerifyResult::Status::Infeasible;
      r.message = e.what();
      return r;
    }
    auto w = clock_waveforms(*r.clock, n, nl.net_id("clk1"), nl.net_id("clk2"));
    for (const auto* stream : {&w.clk1, &w.clk2})
      for (const auto& e : *stream)
        s.apply_inputs(std::vector<std::pair<NetId, LogicLevel>>{{e.net, e.new_value}}, e.time_s);
    sample = output_sample_times(*r.clock, n);
  } else {
    for (int k = 0; k < n; ++k) sample.push_back((k + 1) * period);
  }
  for (int k = 0; k < n; ++k) s.apply_inputs(vector_assignments(nl, vectors[k]), k * period);

  for (int k = 0; k < n; ++k) {
    if (bench_detail::is_gated(nl)) s.run_through(sample[k]);
    else s.run_until(sample[k]);
    auto expected = bcd_add_oracle(vectors[k]);
    auto got = decode_outputs(nl, s.values());
    ++r.vectors;
    if (got && *got == expected) {
      ++r.matched;
    } else {
      r.counterexamples.push_back({vectors[k], expected, output_string(nl, s.values())});
    }
  }
  r.status = r.matched == r.vectors ? VerifyResult::Status::Pass : VerifyResult::Status::Fail;
  return r;
}

inline VerifyResult verify_variant(Variant v, const ProcessParams& pp, double freq_Hz,
                                   double duty_guard = 0.1) {
  return verify_netlist(generate(v), pp, freq_Hz, duty_guard);
}

// ---------------------------------------------------------------------------
// Measurements

// Worst output settle time over all legal vectors, each applied once from
// the all-zero and once from the all-nine operands, clocks (if any) held
// high.
inline double worst_delay(const Netlist& nl, const ProcessParams& pp) {
  double worst = 0.0;
  for (const BcdVector& base : {BcdVector{0, 0, 0}, BcdVector{9, 9, 1}}) {
    for (const BcdVector& v : legal_vectors()) {
      SimState s(nl, pp);
      s.apply_inputs(bench_detail::with_clocks(nl, vector_assignments(nl, base), LogicLevel::L1), 0.0);
      s.settle();
      double t0 = s.now();
      s.apply_inputs(vector_assignments(nl, v), t0);
      s.settle();
      worst = std::max(worst, s.measure_delay(t0));
    }
  }
  return worst;
}

// Seeded sequence of legal vectors, uniform over the 200 triples.
inline std::vector<BcdVector> random_vectors(std::uint64_t seed, int count) {
  const auto all = legal_vectors();
  std::mt19937_64 rng(seed);
  std::vector<BcdVector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(all[rng() % all.size()]);
  return out;
}

// Average power of `cycles` periods of random operands, after one warm-up
// period that is simulated but not traced. Gated netlists need `clock`.
inline double average_power_run(const Netlist& nl, const ProcessParams& pp, double freq_Hz,
                                const BenchOptions& opt,
                                const std::optional<ClockConfig>& clock = std::nullopt) {
  if (opt.cycles < 1) throw BenchError("cycle count must be >= 1");
  const int total = opt.cycles + 1;
  const double period = 1.0 / freq_Hz;
  SimOptions so;
  so.wake_cap_F = opt.wake_cap_F;
  SimState s(nl, pp, so);
  if (bench_detail::is_gated(nl)) {
    if (!clock) throw BenchError("gated netlist needs a clock configuration");
    auto w = clock_waveforms(*clock, total, nl.net_id("clk1"), nl.net_id("clk2"));
    for (const auto* stream : {&w.clk1, &w.clk2})
      for (const auto& e : *stream)
        s.apply_inputs(std::vector<std::pair<NetId, LogicLevel>>{{e.net, e.new_value}}, e.time_s);
  }
  auto vectors = random_vectors(opt.seed, total);
  for (int k = 0; k < total; ++k) s.apply_inputs(vector_assignments(nl, vectors[k]), k * period);
  s.begin_trace(period);
  auto trace = s.end_trace(total * period);
  return average_power(trace, pp);
}

// ---------------------------------------------------------------------------
// Reports

struct BenchRow {
  Variant variant = Variant::Conventional;
  double frequency_Hz = 0;
  double avg_power_W = 0;
  double worst_delay_s = 0;
  double pdp_J = 0;
  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string params_digest;

  const BenchRow* find(Variant v, double freq_Hz) const {
    for (const auto& r : rows)
      if (r.variant == v && r.frequency_Hz == freq_Hz) return &r;
    return nullptr;
  }
};

// One row per (variant, frequency), ordered by frequency then variant.
// Cells run concurrently; each owns its simulator state.
inline BenchReport sweep(const std::vector<Variant>& variants, const std::vector<double>& freqs_Hz,
                         const ProcessParams& pp, const BenchOptions& opt = {}) {
  if (freqs_Hz.empty()) throw BenchError("sweep: no frequencies");
  if (variants.empty()) throw BenchError("sweep: no variants");
  for (double f : freqs_Hz)
    if (!(f > 0)) throw BenchError("sweep: frequencies must be > 0");
  check(pp);

  std::vector<Variant> vs = variants;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<double> fs = freqs_Hz;
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());

  std::map<Variant, Netlist> netlists;
  for (Variant v : vs) netlists.emplace(v, generate(v));

  std::map<Variant, std::future<double>> delays;
  for (Variant v : vs)
    delays.emplace(v, std::async(std::launch::async, [&, v] { return worst_delay(netlists.at(v), pp); }));

  std::map<double, ClockConfig> clocks;
  if (netlists.count(Variant::Gated)) {
    auto sd = characterize_stage_delays(netlists.at(Variant::Gated), pp);
    for (double f : fs) {
      try {
        clocks.emplace(f, derive_clock_config(f, sd.stage1_s, sd.stage2_s, opt.duty_guard));
      } catch (const TimingInfeasible& e) {
        throw BenchError(std::string("gated variant at ") + format_real(f) + " Hz: " + e.what());
      }
    }
  }

  struct Cell {
    Variant v;
    double f;
    std::future<double> power;
  };
  std::vector<Cell> cells;
  for (double f : fs) {
    for (Variant v : vs) {
      std::optional<ClockConfig> clock;
      if (v == Variant::Gated) clock = clocks.at(f);
      cells.push_back({v, f, std::async(std::launch::async, [&, v, f, clock] {
                         return average_power_run(netlists.at(v), pp, f, opt, clock);
                       })});
    }
  }

  BenchReport report;
  report.params_digest = content_digest(serialize_params(pp));
  std::map<Variant, double> delay;
  for (auto& [v, fut] : delays) delay[v] = fut.get();
  for (auto& c : cells) {
    BenchRow row;
    row.variant = c.v;
    row.frequency_Hz = c.f;
    row.avg_power_W = c.power.get();
    row.worst_delay_s = delay.at(c.v);
    row.pdp_J = pdp(row.avg_power_W, row.worst_delay_s);
    report.rows.push_back(row);
  }
  return report;
}

inline const char* kBenchCsvHeader = "variant,frequency_hz,avg_power_w,worst_delay_s,pdp_j";

inline std::string emit_csv(const BenchReport& report) {
  if (report.rows.empty()) throw BenchError("emit: empty report");
  std::string out = kBenchCsvHeader;
  out += '\n';
  for (const auto& r : report.rows) {
    out += to_string(r.variant);
    for (double x : {r.frequency_Hz, r.avg_power_W, r.worst_delay_s, r.pdp_J}) {
      out += ',';
      out += format_real(x);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<BenchRow> parse_csv(std::string_view text) {
  std::vector<BenchRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kBenchCsvHeader) throw BenchError("csv: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t start = 0;
    while (true) {
      auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                      : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto bad = [&] { return BenchError("csv line " + std::to_string(line_no) + ": malformed row"); };
    if (f.size() != 5) throw bad();
    auto v = variant_from_string(f[0]);
    if (!v) throw bad();
    BenchRow r;
    r.variant = *v;
    double* dst[] = {&r.frequency_Hz, &r.avg_power_W, &r.worst_delay_s, &r.pdp_J};
    for (int i = 0; i < 4; ++i) {
      auto x = format_detail::parse_double(f[i + 1]);
      if (!x) throw bad();
      *dst[i] = *x;
    }
    rows.push_back(r);
  }
  if (line_no == 0) throw BenchError("csv: empty input");
  return rows;
}

inline std::string emit_table(const BenchReport& report) {
  if (report.rows.empty()) throw BenchError("emit: empty report");
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-14s %10s %14s %14s %14s\n", "variant", "freq_MHz",
                "avg_power_W", "delay_s", "pdp_J");
  out += buf;
  out += std::string(70, '-') + '\n';
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%-14s %10.1f %14s %14s %14s\n",
                  std::string(to_string(r.variant)).c_str(), r.frequency_Hz / 1e6,
                  format_real(r.avg_power_W).c_str(), format_real(r.worst_delay_s).c_str(),
                  format_real(r.pdp_J).c_str());
    out += buf;
  }
  out += "params digest " + report.params_digest + '\n';
  return out;
}

// Grouped bar charts, one per metric: groups are frequencies, bars variants.
inline std::string emit_svg(const BenchReport& report) {
  if (report.rows.empty()) throw BenchError("emit: empty report");
  std::vector<double> freqs;
  std::vector<Variant> vars;
  for (const auto& r : report.rows) {
    if (std::find(freqs.begin(), freqs.end(), r.frequency_Hz) == freqs.end())
      freqs.push_back(r.frequency_Hz);
    if (std::find(vars.begin(), vars.end(), r.variant) == vars.end()) vars.push_back(r.variant);
  }
  struct Metric {
    const char* title;
    double BenchRow::*field;
  };
  const Metric metrics[] = {{"Average power (W)", &BenchRow::avg_power_W},
                            {"Worst delay (s)", &BenchRow::worst_delay_s},
                            {"Power-delay product (J)", &BenchRow::pdp_J}};
  const char* colors[] = {"#4e79a7", "#f28e2b", "#59a14f"};
  const double chart_w = 420, chart_h = 260, margin = 50, bar_w = 22, gap = 30;
  std::ostringstream s;
  double width = 3 * chart_w + 40;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
    << chart_h + 80 << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int m = 0; m < 3; ++m) {
    double ox = 10 + m * chart_w;
    double max_v = 0;
    for (const auto& r : report.rows) max_v = std::max(max_v, r.*(metrics[m].field));
    if (max_v <= 0) max_v = 1;
    double plot_h = chart_h - margin;
    s << "<g transform=\"translate(" << ox << ",20)\">\n";
    s << "<text x=\"" << chart_w / 2 << "\" y=\"0\" text-anchor=\"middle\" font-size=\"13\">"
      << metrics[m].title << "</text>\n";
    s << "<line x1=\"" << margin << "\" y1=\"" << plot_h + 10 << "\" x2=\"" << chart_w - 10
      << "\" y2=\"" << plot_h + 10 << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << margin - 4 << "\" y=\"20\" text-anchor=\"end\">" << format_real(max_v)
      << "</text>\n";
    for (std::size_t g = 0; g < freqs.size(); ++g) {
      double gx = margin + gap / 2 + g * (vars.size() * bar_w + gap);
      for (std::size_t b = 0; b < vars.size(); ++b) {
        const BenchRow* row = report.find(vars[b], freqs[g]);
        if (!row) continue;
        double v = row->*(metrics[m].field);
        double h = (plot_h - 10) * v / max_v;
        s << "<rect x=\"" << gx + b * bar_w << "\" y=\"" << plot_h + 10 - h << "\" width=\""
          << bar_w - 2 << "\" height=\"" << h << "\" fill=\"" << colors[static_cast<int>(vars[b]) % 3]
          << "\"><title>" << to_string(vars[b]) << ' ' << format_real(v) << "</title></rect>\n";
      }
      char lbl[32];
      std::snprintf(lbl, sizeof lbl, "%g MHz", freqs[g] / 1e6);
      s << "<text x=\"" << gx + vars.size() * bar_w / 2 << "\" y=\"" << plot_h + 25
        << "\" text-anchor=\"middle\">" << lbl << "</text>\n";
    }
    for (std::size_t b = 0; b < vars.size(); ++b) {
      double ly = plot_h + 45;
      double lx = margin + b * 110;
      s << "<rect x=\"" << lx << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
        << colors[static_cast<int>(vars[b]) % 3] << "\"/><text x=\"" << lx + 14 << "\" y=\""
        << ly << "\">" << to_string(vars[b]) << "</text>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace gvn
