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

// gvn: generate, check, benchmark and simulate the BCD adder variants.
//
//   gvn gen   --variant conventional|dvt|gated [-o FILE]
//   gvn check --variant V --freq HZ [--duty-guard G] [--params FILE]
//   gvn bench --freqs 50e6,100e6,200e6 --variants all --params FILE
//             --seed N --cycles N --format csv|table|svg -o DEST
//   gvn sim   --netlist FILE --vectors FILE [--trace FILE] [--params FILE]
//
// Exit status: 0 success, 1 functional failure, 2 usage or infeasibility.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gvn/gvn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("write to '" + path + "' failed");
}

gvn::ProcessParams load_params_or_default(const std::string& path) {
  if (path.empty()) return gvn::ProcessParams{};
  try {
    return gvn::load_params(path);
  } catch (const gvn::ParamsError& e) {
    throw UsageError(e.what());
  }
}

gvn::Variant parse_variant(const std::string& name) {
  auto v = gvn::variant_from_string(name);
  if (!v) throw UsageError("unknown variant '" + name + "'");
  return *v;
}

std::vector<gvn::Variant> parse_variants(const std::string& list) {
  if (list == "all") return {gvn::Variant::Conventional, gvn::Variant::Dvt, gvn::Variant::Gated};
  std::vector<gvn::Variant> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_variant(item));
  if (out.empty()) throw UsageError("no variants given");
  return out;
}

std::vector<double> parse_freqs(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = gvn::format_detail::parse_double(item);
    if (!v || !(*v > 0)) throw UsageError("bad frequency '" + item + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw UsageError("no frequencies given");
  return out;
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& variant, const std::string& out) {
  write_output(out, gvn::serialize_netlist(gvn::generate(parse_variant(variant))));
  return kExitOk;
}

int run_check(const std::string& variant, double freq, double guard, const std::string& params) {
  auto pp = load_params_or_default(params);
  auto v = parse_variant(variant);
  auto r = gvn::verify_variant(v, pp, freq, guard);
  std::printf("%s at %s Hz: %s", std::string(gvn::to_string(v)).c_str(),
              gvn::format_real(freq).c_str(), std::string(gvn::to_string(r.status)).c_str());
  if (r.status == gvn::VerifyResult::Status::Infeasible) {
    std::printf(" (%s)\n", r.message.c_str());
    return kExitUsage;
  }
  std::printf(", %d/%d vectors\n", r.matched, r.vectors);
  if (r.clock)
    std::printf("clock: duty %.6f, clk2 offset %s s, sample offset %s s\n", r.clock->duty,
                gvn::format_real(r.clock->clk2_offset_s).c_str(),
                gvn::format_real(r.clock->sample_offset_s).c_str());
  for (const auto& c : r.counterexamples)
    std::printf("  (%d,%d,%d): expected %d %d, observed %s\n", c.vector.a, c.vector.b, c.vector.cin,
                c.expected.carry, c.expected.digit, c.observed.c_str());
  return r.passed() ? kExitOk : kExitFail;
}

struct BenchArgs {
  std::string freqs = "50e6,100e6,200e6";
  std::string variants = "all";
  std::string params;
  std::uint64_t seed = 1;
  int cycles = 1000;
  std::string format = "table";
  std::string out;
  double duty_guard = 0.1;
  double wake_cap = gvn::kDefaultWakeCap_F;
};

int run_bench(const BenchArgs& a) {
  auto pp = load_params_or_default(a.params);
  gvn::BenchOptions opt;
  opt.seed = a.seed;
  opt.cycles = a.cycles;
  opt.duty_guard = a.duty_guard;
  opt.wake_cap_F = a.wake_cap;
  gvn::BenchReport report;
  try {
    report = gvn::sweep(parse_variants(a.variants), parse_freqs(a.freqs), pp, opt);
  } catch (const gvn::BenchError& e) {
    throw UsageError(e.what());
  }
  std::string text;
  if (a.format == "csv") text = gvn::emit_csv(report);
  else if (a.format == "table") text = gvn::emit_table(report);
  else text = gvn::emit_svg(report);
  write_output(a.out, text);
  return kExitOk;
}

// Vectors file: one stimulus per line, "<time_s> net=value ...", values
// 0, 1, X or Z; '#' starts a comment. Prints the output ports after each
// stimulus has settled (just before the next one, or at quiescence).
int run_sim(const std::string& netlist_path, const std::string& vectors_path,
            const std::string& trace_path, const std::string& params) {
  auto pp = load_params_or_default(params);
  auto parsed = gvn::parse_netlist(read_file(netlist_path));
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors)
      std::fprintf(stderr, "%s:%d:%d: %s\n", netlist_path.c_str(), e.line_number, e.column,
                   e.message.c_str());
    return kExitUsage;
  }
  const gvn::Netlist& nl = *parsed.netlist;

  std::map<double, std::vector<std::pair<gvn::NetId, gvn::LogicLevel>>> stimuli;
  std::istringstream in(read_file(vectors_path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    auto where = vectors_path + ":" + std::to_string(line_no) + ": ";
    auto t = gvn::format_detail::parse_double(tok);
    if (!t || *t < 0) throw UsageError(where + "bad time '" + tok + "'");
    auto& slot = stimuli[*t];
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq + 2 != tok.size())
        throw UsageError(where + "expected net=value, got '" + tok + "'");
      auto id = nl.find_net(tok.substr(0, eq));
      if (!id) throw UsageError(where + "unknown net '" + tok.substr(0, eq) + "'");
      auto v = gvn::logic_from_char(tok[eq + 1]);
      if (!v) throw UsageError(where + "bad value in '" + tok + "'");
      slot.push_back({*id, *v});
    }
  }
  if (stimuli.empty()) throw UsageError("no stimuli in '" + vectors_path + "'");

  gvn::SimState s(nl, pp);
  std::vector<gvn::Event> events;
  try {
    for (const auto& [t, assign] : stimuli) s.apply_inputs(assign, t);
  } catch (const gvn::SimError& e) {
    throw UsageError(e.what());
  }
  auto report = [&](double at) {
    std::printf("%s", gvn::format_real(at).c_str());
    for (gvn::NetId p : nl.output_ports)
      std::printf(" %s=%c", nl.net(p).name.c_str(), gvn::to_char(s.value(p)));
    std::printf("\n");
  };
  for (auto it = stimuli.begin(); it != stimuli.end(); ++it) {
    auto next = std::next(it);
    auto ev = next == stimuli.end() ? s.settle() : s.run_until(next->first);
    events.insert(events.end(), ev.begin(), ev.end());
    report(it->first);
  }
  if (!trace_path.empty()) {
    std::string text = "time_s,net,value\n";
    for (const auto& e : events)
      text += gvn::format_real(e.time_s) + ',' + nl.net(e.net).name + ',' +
              gvn::to_char(e.new_value) + '\n';
    write_output(trace_path, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switch-level simulation and power/timing bench for BCD adders"};
  app.require_subcommand(1);

  std::string gen_variant, gen_out;
  auto* gen = app.add_subcommand("gen", "Write a generated netlist");
  gen->add_option("--variant", gen_variant, "conventional, dvt or gated")->required();
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  std::string check_variant, check_params;
  double check_freq = 0, check_guard = 0.1;
  auto* check = app.add_subcommand("check", "Verify a variant on all 200 legal vectors");
  check->add_option("--variant", check_variant, "conventional, dvt or gated")->required();
  check->add_option("--freq", check_freq, "Clock frequency in Hz")->required()->check(
      CLI::PositiveNumber);
  check->add_option("--duty-guard", check_guard, "Awake-window guard margin")->check(
      CLI::NonNegativeNumber);
  check->add_option("--params", check_params, "Process parameter file");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Power/delay sweep over variants and frequencies");
  bench->add_option("--freqs", ba.freqs, "Comma-separated frequencies in Hz")->capture_default_str();
  bench->add_option("--variants", ba.variants, "'all' or a comma-separated list")
      ->capture_default_str();
  bench->add_option("--params", ba.params, "Process parameter file");
  bench->add_option("--seed", ba.seed, "Stimulus seed")->capture_default_str();
  bench->add_option("--cycles", ba.cycles, "Random cycles per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", ba.format, "csv, table or svg")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "table", "svg"}));
  bench->add_option("-o,--output", ba.out, "Output file (default stdout)");
  bench->add_option("--duty-guard", ba.duty_guard, "Awake-window guard margin")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  bench->add_option("--wake-cap", ba.wake_cap, "Virtual-rail charge per wake, F")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  std::string sim_netlist, sim_vectors, sim_trace, sim_params;
  auto* sim = app.add_subcommand("sim", "Simulate a netlist file against timed stimuli");
  sim->add_option("--netlist", sim_netlist, "Netlist file")->required();
  sim->add_option("--vectors", sim_vectors, "Stimulus file: '<time_s> net=value ...' per line")
      ->required();
  sim->add_option("--trace", sim_trace, "Write every transition as csv (time_s,net,value)");
  sim->add_option("--params", sim_params, "Process parameter file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return run_gen(gen_variant, gen_out);
    if (*check) return run_check(check_variant, check_freq, check_guard, check_params);
    if (*bench) return run_bench(ba);
    if (*sim) return run_sim(sim_netlist, sim_vectors, sim_trace, sim_params);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "gvn: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gvn: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
