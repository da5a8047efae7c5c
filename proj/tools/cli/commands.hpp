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

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "povmlab/spin.hpp"
#include "report.hpp"

namespace povmlab::cli {

inline constexpr double kDefaultTolerance = 1e-9;

// Everything a subcommand may read. Angles are radians throughout.
struct RunConfig {
  std::string subcommand;

  // mzi-scan
  double eps1 = 0.5;
  double eps2 = 0.5;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double delta_min = 0.0;
  double delta_max = 2.0 * std::numbers::pi;
  std::size_t delta_steps = 73;

  // kerr-tradeoff (also uses eps2)
  double lambda = 0.5;
  std::vector<double> amplitudes{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  std::string probe = "coherent";
  std::size_t bins = 8;

  // spin
  std::optional<std::array<double, 3>> a1;
  std::optional<std::array<double, 3>> a2;

  // spin-phase
  double spin = 0.5;
  std::vector<spin::Interval> intervals;  // empty means [0, pi]
  std::size_t shifts = 16;

  // phase-space
  std::size_t grid_d = 8;

  // 0 lets each command pick its own truncation.
  std::size_t nmax = 0;
  unsigned long long seed = 1;
  double tolerance = kDefaultTolerance;
};

// Each command throws povmlab::Error (usually ValidationError) on bad input.
Report cmd_mzi_scan(const RunConfig& config);
Report cmd_kerr_tradeoff(const RunConfig& config);
Report cmd_spin(const RunConfig& config);
Report cmd_spin_phase(const RunConfig& config);
Report cmd_phase_space(const RunConfig& config);

Report run_command(const RunConfig& config);

}  // namespace povmlab::cli
