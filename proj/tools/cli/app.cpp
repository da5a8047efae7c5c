// Copyright 2026 The povmlab Authors
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

#include "app.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "povmlab/error.hpp"

namespace povmlab::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::array<double, 3> bloch(const std::string& text, const std::string& what) {
  const auto v = split_numbers(text, what);
  if (v.size() != 3) throw UsageError(what + " expects x,y,z");
  return {v[0], v[1], v[2]};
}

double tolerance_from_env() {
  const char* env = std::getenv("POVMLAB_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  const double tol = parse_double(env, "POVMLAB_TOL");
  if (!(tol > 0.0)) throw UsageError("POVMLAB_TOL must be positive");
  return tol;
}

struct Options {
  RunConfig config;
  std::string format = "csv";
  std::string out;
  bool verify = false;
  std::string a1, a2;
  std::vector<std::string> amps;
  std::vector<std::string> intervals;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.config.seed, "RNG seed");
  sub->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_flag("--verify", o.verify, "exit 2 if any check fails");
  sub->add_option("--nmax", o.config.nmax, "Fock truncation (0: command default)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  RunConfig& c = o.config;
  CLI::App app{"POVM toolkit: interferometer scans, coexistence and phase observables"};
  app.name("povmlab");
  app.require_subcommand(1);

  auto* mzi = app.add_subcommand("mzi-scan", "single-photon Mach-Zehnder counting statistics");
  mzi->add_option("--eps1", c.eps1, "first beam splitter transparency");
  mzi->add_option("--eps2", c.eps2, "second beam splitter transparency");
  mzi->add_option("--theta1", c.theta1, "first beam splitter phase");
  mzi->add_option("--theta2", c.theta2, "second beam splitter phase");
  mzi->add_option("--delta-min", c.delta_min);
  mzi->add_option("--delta-max", c.delta_max);
  mzi->add_option("--delta-steps", c.delta_steps, "number of delta values, ends included");

  auto* kerr = app.add_subcommand("kerr-tradeoff", "visibility against path confidence");
  kerr->add_option("--lambda", c.lambda, "Kerr coupling");
  kerr->add_option("--eps2", c.eps2, "second beam splitter transparency");
  kerr->add_option("--amp", o.amps, "probe amplitudes |z|, comma separated")
      ->delimiter(',');
  kerr->add_option("--probe", c.probe, "coherent or number")
      ->check(CLI::IsMember({"coherent", "number"}));
  kerr->add_option("--bins", c.bins, "phase readout bins");

  auto* sp = app.add_subcommand("spin", "coexistence of two unsharp spin-1/2 effects");
  sp->add_option("--a1", o.a1, "first Bloch vector x,y,z")->required();
  sp->add_option("--a2", o.a2, "second Bloch vector x,y,z")->required();

  auto* phase = app.add_subcommand("spin-phase", "covariant spin phase observable");
  phase->add_option("--spin", c.spin, "spin quantum number (integer or half-integer)");
  phase->add_option("--interval", o.intervals, "lo,hi in radians; repeat for more");
  phase->add_option("--shifts", c.shifts, "random shifts per covariance check");

  auto* ps = app.add_subcommand("phase-space", "phase-space observable on a cyclic grid");
  ps->add_option("--grid-d", c.grid_d, "grid size");

  for (CLI::App* sub : {mzi, kerr, sp, phase, ps}) add_common(sub, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report;
  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    c.tolerance = tolerance_from_env();
    if (!o.amps.empty()) {
      c.amplitudes.clear();
      for (const auto& a : o.amps) c.amplitudes.push_back(parse_double(a, "--amp"));
    }
    if (!o.a1.empty()) c.a1 = bloch(o.a1, "--a1");
    if (!o.a2.empty()) c.a2 = bloch(o.a2, "--a2");
    for (const auto& text : o.intervals) {
      const auto v = split_numbers(text, "--interval");
      if (v.size() != 2) throw UsageError("--interval expects lo,hi");
      c.intervals.push_back({v[0], v[1]});
    }
    report = run_command(c);
  } catch (const UsageError& e) {
    err << "povmlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "povmlab: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string text = o.format == "json" ? render_json(report) : render_csv(report);
  if (o.out.empty()) {
    out << text;
    out.flush();
  } else {
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    file << text;
    file.close();
    if (!file) {
      err << "povmlab: cannot write " << o.out << '\n';
      return kExitUsage;
    }
  }

  if (!o.verify) return kExitOk;
  bool ok = true;
  for (const Check& check : report.checks) {
    if (check.kind == Check::Kind::kAssert && !check.pass) {
      err << "povmlab: check " << check.name << " failed: " << format_number(check.value)
          << " vs limit " << format_number(check.limit) << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace povmlab::cli
