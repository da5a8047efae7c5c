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

#include <cmath>
#include <numbers>
#include <string>

#include "phase_kernel.hpp"
#include "povmlab/error.hpp"
#include "povmlab/spin.hpp"

namespace povmlab::spin {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

SpinPhaseSpace::SpinPhaseSpace(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (!std::isfinite(s) || rounded < 1.0 || std::abs(twice - rounded) > 1e-12) {
    throw ValidationError("SpinPhaseSpace: s = " + std::to_string(s) +
                          " is not a positive multiple of 1/2");
  }
  twice_s_ = static_cast<int>(rounded);
}

double SpinPhaseSpace::m(std::size_t k) const {
  if (k >= dim()) throw DimensionError("SpinPhaseSpace::m: index out of range");
  return static_cast<double>(k) - s();
}

void validate_interval(const Interval& x) {
  if (!(std::isfinite(x.lo) && std::isfinite(x.hi)) || x.lo < 0.0 || x.hi > kTwoPi ||
      x.lo > x.hi) {
    throw ValidationError("interval [" + std::to_string(x.lo) + ", " + std::to_string(x.hi) +
                          "] is not inside [0, 2pi]");
  }
}

Operator spin_z(const SpinPhaseSpace& space) {
  RealVector diag(static_cast<Eigen::Index>(space.dim()));
  for (std::size_t k = 0; k < space.dim(); ++k) diag(static_cast<Eigen::Index>(k)) = space.m(k);
  return Operator::diagonal(diag);
}

Operator spin_raising(const SpinPhaseSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  const double s = space.s();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double m = space.m(static_cast<std::size_t>(k));
    out(k + 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return Operator(std::move(out));
}

Effect spin_phase_effect(const SpinPhaseSpace& space, const Interval& x) {
  validate_interval(x);
  return Effect(Operator(detail::arc_kernel(space.dim(), x.lo, x.hi, +1)));
}

Effect spin_phase_effect(const SpinPhaseSpace& space, std::span<const Interval> x) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  Matrix out = Matrix::Zero(n, n);
  for (const auto& piece : x) {
    validate_interval(piece);
    out += detail::arc_kernel(space.dim(), piece.lo, piece.hi, +1);
  }
  return Effect(Operator(std::move(out)));
}

DiscreteObservable spin_phase_observable(const SpinPhaseSpace& space,
                                         std::span<const double> cuts) {
  std::vector<Label> labels;
  std::vector<Effect> effects;
  double lo = 0.0;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const double hi = k < cuts.size() ? cuts[k] : kTwoPi;
    if (!(hi > lo)) throw ValidationError("spin_phase_observable: cuts must increase inside (0, 2pi)");
    labels.push_back({static_cast<int>(k)});
    effects.push_back(spin_phase_effect(space, Interval{lo, hi}));
    lo = hi;
  }
  return DiscreteObservable(std::move(labels), std::move(effects));
}

std::vector<Interval> shift_interval(const Interval& x, double alpha) {
  validate_interval(x);
  double a = std::fmod(alpha, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  const double lo = x.lo + a;
  const double hi = x.hi + a;
  if (lo >= kTwoPi) return {{lo - kTwoPi, std::min(hi - kTwoPi, kTwoPi)}};
  if (hi <= kTwoPi) return {{lo, hi}};
  return {{lo, kTwoPi}, {0.0, hi - kTwoPi}};
}

double spin_phase_covariance_check(const SpinPhaseSpace& space, const Interval& x,
                                   double alpha) {
  const Matrix s = spin_phase_effect(space, x).op().matrix();
  const auto n = static_cast<Eigen::Index>(space.dim());
  Matrix rotated(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double mr = space.m(static_cast<std::size_t>(r));
      const double mc = space.m(static_cast<std::size_t>(c));
      rotated(r, c) = std::polar(1.0, -alpha * mr) * s(r, c) * std::polar(1.0, alpha * mc);
    }
  }
  const auto shifted = shift_interval(x, alpha);
  const Matrix target = spin_phase_effect(space, shifted).op().matrix();
  return (rotated - target).cwiseAbs().maxCoeff();
}

Operator spin_phase_first_moment(const SpinPhaseSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  Matrix b = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) b(k + 1, k) = 1.0;
  return Operator(std::move(b));
}

}  // namespace povmlab::spin
