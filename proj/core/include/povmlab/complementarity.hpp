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
 * Coexistence and complementarity of finite observables.
 *
 * Outcome sets are enumerated exhaustively as unions of outcomes. Pairs
 * where either effect is O or I are skipped; if every pair is skipped the
 * predicates return false, since complementarity is a relation between
 * nontrivial observables.
 */

#pragma once

#include <optional>
#include <string>

#include "povmlab/linalg.hpp"
#include "povmlab/povm.hpp"

namespace povmlab {

struct ComplementarityOptions {
  /// Eigenvalues within this distance of 1 count as 1.
  double unit_eigenvalue = tol::kUnitEigenvalue;
  /// Idempotency tolerance for projection inputs and trivial-effect tests.
  double projection = tol::kProjection;
  /// Bound on outcomes(E1) + outcomes(E2), since 2^k subsets are visited.
  std::size_t max_total_outcomes = 20;
};

/// Projection onto the span of eigenvectors with eigenvalue within
/// `threshold` of 1 (zero operator if none).
Operator eigenspace_one(const Operator& effect, double threshold = tol::kUnitEigenvalue);

/// Projection onto range(P) intersected with range(Q), taken as the null
/// space of (I - P) + (I - Q). Throws ValidationError on non-projections.
Operator meet_projections(const Operator& p, const Operator& q,
                          double tolerance = tol::kProjection);

/// Disjointness of spectral projections over all nontrivial outcome sets.
/// Both observables must be projection valued.
bool are_complementary(const DiscreteObservable& e1, const DiscreteObservable& e2,
                       const ComplementarityOptions& options = {});

/// No state makes an outcome set of one observable certain while the other
/// observable's outcome set is certain or impossible.
bool are_prob_complementary(const DiscreteObservable& e1, const DiscreteObservable& e2,
                            const ComplementarityOptions& options = {});

struct JointSearchResult {
  bool feasible = false;
  /// Joint observable with labels (x, y) when one was constructed.
  std::optional<DiscreteObservable> witness;
  /// "commuting", "spin" or "grid".
  std::string method;
  /// Best slack found by the grid search (positive means strictly feasible).
  double slack = 0.0;
};

/// Joint measurability of two 2-valued qubit observables. Commuting pairs
/// use the product witness, pairs of the form (I +- a.sigma)/2 use the
/// exact Bloch criterion, everything else a grid search with refinement.
JointSearchResult joint_observable_search(const DiscreteObservable& e1,
                                          const DiscreteObservable& e2);
bool joint_observable_feasible(const DiscreteObservable& e1, const DiscreteObservable& e2);

}  // namespace povmlab
