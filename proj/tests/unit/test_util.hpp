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

#include <cstddef>

#include "povmlab/linalg.hpp"
#include "povmlab/povm.hpp"

namespace povmlab::testing {

inline double completeness_residual(const DiscreteObservable& obs) {
  Operator sum = Operator::zero(obs.dim());
  for (const auto& e : obs.effects()) sum += e.op();
  return max_abs_diff(sum, Operator::identity(obs.dim()));
}

inline double min_effect_eigenvalue(const DiscreteObservable& obs) {
  double m = 1.0;
  for (const auto& e : obs.effects()) m = std::min(m, min_eigenvalue(e.op()));
  return m;
}

/// Largest entrywise deviation between two observables with the same
/// outcome order; infinity when the outcome lists differ.
inline double observable_distance(const DiscreteObservable& a, const DiscreteObservable& b) {
  if (a.outcomes() != b.outcomes() || a.dim() != b.dim()) return 1e300;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, max_abs_diff(a.effect(i).op(), b.effect(i).op()));
  }
  return m;
}

}  // namespace povmlab::testing
