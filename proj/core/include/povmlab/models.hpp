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
 * Measurement models on a cyclic grid of d sites: pointer measurements by a
 * controlled shift, unsharp position, and a joint unsharp position and
 * momentum observable built from Weyl translates of a state.
 *
 * X|q> = |q+1>, Z|q> = w^q |q> with w = e^{2 pi i / d}, and the momentum
 * basis is |p~> = d^{-1/2} sum_q w^{pq} |q>, so X|p~> = w^{-p}|p~> and
 * Z|p~> = |p~+1>. All arithmetic on sites is mod d.
 *
 * Convolutions are (chi_X * f)(q) = sum_{x in X} f(q - x). A shift scheme
 * whose pointer starts in phi realises this with f(j) = |phi(-j)|^2.
 *
 * Nothing here claims a continuum limit; the uncertainty product is a
 * number to look at, not a bound.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "povmlab/linalg.hpp"
#include "povmlab/povm.hpp"

namespace povmlab::models {

class CyclicGrid {
 public:
  explicit CyclicGrid(std::size_t d);

  std::size_t size() const { return d_; }
  std::size_t wrap(long long site) const;

  /// Column p is |p~>.
  Matrix dft() const;
  Operator shift(long long steps = 1) const;  // X^steps
  Operator boost(long long steps = 1) const;  // Z^steps
  Vector position_vector(std::size_t q) const { return basis_vector(d_, q); }
  Vector momentum_vector(std::size_t p) const;

  /// Sharp position and momentum observables, labels {q} and {p}.
  DiscreteObservable position_observable() const;
  DiscreteObservable momentum_observable() const;

 private:
  std::size_t d_;
};

/// Nonnegative weights over the sites summing to 1 (within 1e-12).
class ConfidenceFunction {
 public:
  explicit ConfidenceFunction(RealVector weights);

  std::size_t size() const { return static_cast<std::size_t>(w_.size()); }
  double operator()(std::size_t site) const { return w_(static_cast<Eigen::Index>(site)); }
  const RealVector& weights() const { return w_; }

  /// f(j) = |phi(-j)|^2.
  static ConfidenceFunction from_amplitudes(const Vector& phi);

 private:
  RealVector w_;
};

/// Controlled shift sum_k P_k (x) X^{a_k} for a Hermitian A with distinct
/// integer eigenvalues a_k. The pointer starts uniformly spread over the
/// sites -width..width and is read in the position basis; the pointer
/// function sends the window a_k + [-width, width] to the label {a_k}.
/// Throws ValidationError when two windows overlap (mod d) or A is not of
/// the required form.
MeasurementScheme toy_discrete_measurement(const Operator& a, const CyclicGrid& probe,
                                           std::size_t pointer_width = 0);

/// Effects diag_q sum_{x in X} f(q - x), one outcome {x} per site.
DiscreteObservable unsharp_position_observable(const ConfidenceFunction& f,
                                               const CyclicGrid& grid);

/// Grid system coupled to a grid pointer in state phi by sum_q |q><q| (x) X^q,
/// pointer read in the position basis.
MeasurementScheme shift_scheme(const Vector& phi, const CyclicGrid& grid);

/// Kraus A_x = diag_q phi(x - q), outcomes {x}. Throws ValidationError
/// unless sum |phi|^2 = 1 within 1e-12.
StateTransformer unsharp_position_transformer(const Vector& phi, const CyclicGrid& grid);

/// G(q,p) = X^q Z^p T0 Z^-p X^-q / d, labels {q, p}, q-major. The position
/// marginal is the convolution of the sharp position with <q|T0|q>, the
/// momentum marginal that of the sharp momentum with <p~|T0|p~>.
DiscreteObservable phase_space_observable(const State& t0, const CyclicGrid& grid);

/// Smallest root-mean-square spread over the d ways of unwrapping the circle
/// onto a line (the centre need not be a site).
double cyclic_spread(std::span<const double> weights);

struct UncertaintyReport {
  double position_spread = 0.0;  // in sites
  double momentum_spread = 0.0;  // in momentum steps
  /// position_spread * momentum_spread * 2 pi / d.
  double product = 0.0;
};

/// Spreads of <q|T0|q> and <p~|T0|p~>.
UncertaintyReport uncertainty_report(const State& t0, const CyclicGrid& grid);

}  // namespace povmlab::models
