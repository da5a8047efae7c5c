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
 * Effects, states, finite observables, state transformers and measurement
 * schemes. Decision procedures for coexistence and complementarity live in
 * complementarity.hpp.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "povmlab/linalg.hpp"

namespace povmlab {

/// Outcome label: a single integer or a tuple of integers.
using Label = std::vector<int>;

std::string to_string(const Label& label);

/// Hermitian operator with spectrum in [0, 1] (within tolerance).
class Effect {
 public:
  explicit Effect(Operator op);

  const Operator& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }

 private:
  Operator op_;
};

/// Positive operator of unit trace.
class State {
 public:
  explicit State(Operator op);
  /// Vector state P[v]; v must be a unit vector.
  static State pure(const Vector& v);
  static State maximally_mixed(std::size_t dim);

  const Operator& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }

 private:
  Operator op_;
};

/// tr[T E], snapped to [0, 1] when within tolerance of the boundary.
double probability(const State& state, const Effect& effect);
double probability(const State& state, const Operator& effect);

/// Finite-outcome POVM. Labels are unique; effects sum to the identity.
class DiscreteObservable {
 public:
  DiscreteObservable(std::vector<Label> outcomes, std::vector<Effect> effects);
  /// Convenience: validates each operator as an Effect first.
  static DiscreteObservable from_operators(std::vector<Label> outcomes,
                                           std::vector<Operator> effects);

  std::size_t size() const { return outcomes_.size(); }
  std::size_t dim() const { return effects_.front().dim(); }
  const std::vector<Label>& outcomes() const { return outcomes_; }
  const std::vector<Effect>& effects() const { return effects_; }
  const Effect& effect(std::size_t index) const { return effects_.at(index); }
  /// Throws ValidationError for an unknown label.
  const Effect& effect(const Label& label) const;
  std::optional<std::size_t> index_of(const Label& label) const;

  /// E(X) for the outcome set given by indices.
  Operator sum_over(std::span<const std::size_t> indices) const;
  /// E(X) where bit i of `mask` selects outcome i (at most 63 outcomes).
  Operator sum_over_mask(unsigned long long mask) const;

  std::vector<double> probabilities(const State& state) const;
  bool is_projection_valued(double tolerance = tol::kProjection) const;

 private:
  std::vector<Label> outcomes_;
  std::vector<Effect> effects_;
};

/// Marginal onto one component of tuple labels, groups in order of first
/// appearance. Throws ValidationError when labels differ in arity or the
/// axis is out of range.
DiscreteObservable marginal(const DiscreteObservable& obs, std::size_t axis);

/// Groups outcomes by `f`, summing effects, in order of first appearance.
DiscreteObservable coarse_grain(const DiscreteObservable& obs,
                                const std::function<Label(const Label&)>& f);

/// E1 x E2 on the tensor product space with concatenated labels.
DiscreteObservable product(const DiscreteObservable& a, const DiscreteObservable& b);

/// V^dag E(x) V for an isometry V (columns orthonormal). Completeness holds
/// when the range of V reduces the observable; otherwise ValidationError.
DiscreteObservable compress(const DiscreteObservable& obs, const Matrix& isometry);

/// Outcome-indexed family of operations T -> sum_i M_i T M_i^dag.
class StateTransformer {
 public:
  StateTransformer(std::vector<Label> outcomes,
                   std::vector<std::vector<Operator>> kraus_sets);

  std::size_t size() const { return outcomes_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Label>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<Operator>>& kraus_sets() const { return kraus_; }

  /// Unnormalised output state for the outcome set given by indices.
  Operator apply(std::span<const std::size_t> indices, const Operator& state) const;
  Operator apply(std::size_t index, const Operator& state) const;
  /// I(Omega)(T).
  Operator apply_all(const Operator& state) const;

  /// sum_i M_i^dag M_i for one outcome.
  Operator effect_operator(std::size_t index) const;
  bool is_complete(double tolerance = tol::kCompleteness) const;
  /// The compatible observable; throws unless complete.
  DiscreteObservable observable() const;

 private:
  std::vector<Label> outcomes_;
  std::vector<std::vector<Operator>> kraus_;
  std::size_t dim_ = 0;
};

/// I(X)(T) for a set of labels; throws ValidationError on an unknown label.
Operator apply_transformer(const StateTransformer& transformer,
                           const std::vector<Label>& outcome_set, const State& state);

/// T -> sqrt(E(x)) T sqrt(E(x)).
StateTransformer luders_transformer(const DiscreteObservable& obs);

/// Computational basis states plus `random_count` Haar-random pure states.
std::vector<State> state_sample(std::size_t dim, unsigned long long seed = 20240917,
                                std::size_t random_count = 32);

/// tr[I(x)(T)] == tr[I(x)(I(x)(T))] for every outcome and sample state.
bool is_repeatable(const StateTransformer& transformer, double tolerance = 1e-8);
bool is_repeatable(const StateTransformer& transformer, std::span<const State> sample,
                   double tolerance = 1e-8);

/// tr[T E(x)] == tr[I(Omega)(T) E(x)] for every outcome and sample state.
bool is_first_kind(const StateTransformer& transformer, const DiscreteObservable& obs,
                   double tolerance = 1e-9);
bool is_first_kind(const StateTransformer& transformer, const DiscreteObservable& obs,
                   std::span<const State> sample, double tolerance = 1e-9);

/// Where the pointer observable acts.
enum class PointerSupport {
  kProbe,  // pointer effects act on the probe factor only (I (x) Z)
  kJoint,  // pointer effects act on the whole system (x) probe space
};

/// <K, T', Z, f>: coupling on system (x) probe, probe state, pointer
/// observable and pointer function. An empty pointer function is the identity.
struct MeasurementScheme {
  std::size_t system_dim = 0;
  Operator coupling;
  State probe_state = State::maximally_mixed(1);
  DiscreteObservable pointer =
      DiscreteObservable::from_operators({{0}}, {Operator::identity(1)});
  std::function<Label(const Label&)> pointer_function;
  PointerSupport support = PointerSupport::kProbe;
};

/// Checks unitarity and dimensional consistency; throws on failure.
void validate(const MeasurementScheme& scheme);

/// F(X) = tr_probe[(I (x) T') U^dag Z(f^-1(X)) U].
DiscreteObservable induced_observable(const MeasurementScheme& scheme);

/// Kraus form of T -> tr_probe[(I (x) Z(x)) U (T (x) T') U^dag] with the
/// pointer function applied. Requires PointerSupport::kProbe.
StateTransformer scheme_transformer(const MeasurementScheme& scheme);

/// Pointer statistics on the evolved joint state, grouped by the pointer
/// function in the same order as induced_observable.
std::vector<double> pointer_probabilities(const MeasurementScheme& scheme,
                                          const State& system_state);

}  // namespace povmlab
