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

/**
 * @file
 * Unsharp spin-1/2 effects and their coexistence, plus the covariant spin
 * phase observable for arbitrary spin s.
 */

#pragma once

#include <span>
#include <vector>

#include "povmlab/linalg.hpp"
#include "povmlab/povm.hpp"

namespace povmlab::spin {

using BlochVector = Eigen::Vector3d;

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// F(a) = (I + a.sigma) / 2. Throws ValidationError if |a| > 1.
Effect spin_effect(const BlochVector& a);
/// Two-valued observable {+1: F(a), -1: F(-a)}.
DiscreteObservable spin_observable(const BlochVector& a);
/// a with E = e0 I + (a.sigma)/2, i.e. a_i = tr[E sigma_i].
BlochVector bloch_vector(const Operator& qubit_operator);

/// |a1 + a2| + |a1 - a2|.
double coexist_value(const BlochVector& a1, const BlochVector& a2);
/// coexist_value <= 2 (+1e-12).
bool coexist_criterion(const BlochVector& a1, const BlochVector& a2);
/// Decides coexistence from the four-ball intersection form, without using
/// the closed criterion: tries the midpoint witness, then minimises the
/// joint constraint violation over (gamma, point).
bool coexist_oracle(const BlochVector& a1, const BlochVector& a2);
/// Smallest achievable max-violation of the four ball constraints. Zero or
/// negative means the balls intersect for some gamma.
double ball_violation_minimum(const BlochVector& a1, const BlochVector& a2);

/// G_ik = (alpha_ik I + (a_i + a_k).sigma / 2) / 2 with alpha_ik = (1 + a_i.a_k)/2,
/// labels (+-1, +-1), first component for a1. Throws ValidationError when
/// the pair is not coexistent.
DiscreteObservable joint_spin_observable(const BlochVector& a1, const BlochVector& a2);

/// Spin-s space with basis m = -s, ..., s in ascending order.
class SpinPhaseSpace {
 public:
  /// s must be a positive multiple of 1/2.
  explicit SpinPhaseSpace(double s);
  double s() const { return static_cast<double>(twice_s_) / 2.0; }
  std::size_t dim() const { return static_cast<std::size_t>(twice_s_) + 1; }
  /// m value of basis index k.
  double m(std::size_t k) const;

 private:
  int twice_s_;
};

/// Closed interval [lo, hi] inside [0, 2 pi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Throws ValidationError unless 0 <= lo <= hi <= 2 pi.
void validate_interval(const Interval& x);

/// s3 = diag(m) and the raising operator s+.
Operator spin_z(const SpinPhaseSpace& space);
Operator spin_raising(const SpinPhaseSpace& space);

/// S(X)_{mn} = int_X e^{i(n-m)a} da / 2 pi.
Effect spin_phase_effect(const SpinPhaseSpace& space, const Interval& x);
/// S of a finite union of intervals.
Effect spin_phase_effect(const SpinPhaseSpace& space, std::span<const Interval> x);
/// Phase observable over the partition of [0, 2 pi] at the given cut points
/// (strictly increasing, inside (0, 2 pi)). Labels are bin indices.
DiscreteObservable spin_phase_observable(const SpinPhaseSpace& space,
                                         std::span<const double> cuts);

/// max |e^{-i a s3} S(X) e^{i a s3} - S(X + a mod 2 pi)|; the shifted set is
/// split at the 2 pi wraparound.
double spin_phase_covariance_check(const SpinPhaseSpace& space, const Interval& x,
                                   double alpha);

/// int e^{ia} S(da) = sum_m |m+1><m|.
Operator spin_phase_first_moment(const SpinPhaseSpace& space);

/// Shifts an interval by alpha on the circle, returning one or two pieces.
std::vector<Interval> shift_interval(const Interval& x, double alpha);

}  // namespace povmlab::spin
