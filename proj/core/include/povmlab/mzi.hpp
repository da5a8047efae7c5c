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
 * Truncated-Fock optics: beam splitters, phase shifters, the Mach-Zehnder
 * interferometer and its induced observables, and small multi-mode circuits.
 *
 * Two-mode operators act on a (x) b with basis index n1 * dim + n2.
 *
 * Sign convention. The beam splitter is U = exp(conj(alpha) a b^dag - alpha
 * a^dag b) with alpha = |alpha| e^{i theta}, cos|alpha| = sqrt(eps), so
 * U|10> = sqrt(eps)|10> + e^{-i theta} sqrt(1-eps)|01>. With this unitary the
 * single-photon count probability is
 *
 *   p(1,0) = e1 e2 + (1-e1)(1-e2) - 2 sqrt(e1(1-e1)e2(1-e2)) cos(t2 - t1 - d),
 *
 * i.e. the interference term enters with a minus sign. Formulas quoted with
 * a plus sign correspond to theta2 -> theta2 + pi.
 */

#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "povmlab/linalg.hpp"
#include "povmlab/povm.hpp"

namespace povmlab::mzi {

/// Per-mode truncation: photon numbers 0..nmax.
struct FockSpace {
  std::size_t nmax = 4;
  std::size_t dim() const { return nmax + 1; }
};

struct BSParams {
  double eps = 1.0;    // transparency in [0, 1]
  double theta = 0.0;  // phase of alpha
};

struct MZIParams {
  BSParams bs1;
  BSParams bs2;
  double delta = 0.0;
};

void validate(const BSParams& p);

Operator annihilation(std::size_t dim);
Operator number(std::size_t dim);
Vector fock_vector(std::size_t dim, std::size_t n);
State number_state(std::size_t dim, std::size_t n);

/// exp(conj(alpha) a (x) b^dag - alpha a^dag (x) b).
Operator beam_splitter(const BSParams& params, const FockSpace& space);
/// exp(i delta N_a) (x) I.
Operator phase_shifter(double delta, const FockSpace& space);
/// U_beta V_delta U_alpha.
Operator mzi_unitary(const MZIParams& params, const FockSpace& space);

State mzi_output_state(const State& a_state, const State& b_state, const MZIParams& params,
                       const FockSpace& space);

/// p(n1, n2) = <n1,n2|W|n1,n2>, indexed [n1][n2]. Values within 1e-10 below
/// zero are reported as zero.
RealMatrix detection_probabilities(const State& w, const FockSpace& space);

/// Single-photon p(1,0) in closed form (see the file comment for the sign).
double effective_transparency(const MZIParams& params);

/// The interferometer as a scheme for the a-mode: probe = b-mode state,
/// pointer = joint photon counts (n1, n2).
MeasurementScheme mzi_scheme(const MZIParams& params, const FockSpace& space,
                             const State& b_state);

/// F(n1,n2) = C(n1+n2, n1) eps^n1 (1-eps)^n2 |n1+n2><n1+n2| on the a-mode,
/// labels (n1, n2) for 0 <= n1, n2 <= nmax.
DiscreteObservable induced_mzi_observable(const MZIParams& params, const FockSpace& space);

/// Binomially smeared number observable: F1(n) = sum_m C(m,n) eps^n (1-eps)^(m-n) |m><m|.
DiscreteObservable smeared_number_observable(double eps, const FockSpace& space);

/// The single beam splitter U_gamma whose count observable equals the full
/// interferometer's, recovered from the single-photon block.
BSParams equivalent_beam_splitter(const MZIParams& params, const FockSpace& space);

/// Columns |10> and |01> inside the two-mode space.
Matrix single_photon_isometry(const FockSpace& space);

/// sqrt(e1)|10> + e^{-i(t1+d)} sqrt(1-e1)|01> in the basis (|10>, |01>).
Vector single_photon_state(double eps1, double theta1, double delta);

/// Outcomes (1,0) and (0,1) on span{|10>, |01>}: F(1,0) = P[U_beta^dag |10>]
/// = P[sqrt(e2)|10> - e^{-i t2} sqrt(1-e2)|01>].
DiscreteObservable single_photon_observable(double eps2, double theta2);

// --- Multi-mode circuits ---------------------------------------------------

struct BeamSplitterElement {
  BSParams params;
  std::size_t mode1 = 0;
  std::size_t mode2 = 1;
};

struct PhaseShifterElement {
  double delta = 0.0;
  std::size_t mode = 0;
};

using CircuitElement = std::variant<BeamSplitterElement, PhaseShifterElement>;

/// Elements are applied in order (first element acts first).
struct Circuit {
  std::size_t modes = 4;
  std::vector<CircuitElement> elements;
};

/// Unitary of the circuit on `modes` modes truncated at nmax photons each.
/// Throws ValidationError for a malformed circuit.
Operator circuit_unitary(const Circuit& circuit, std::size_t nmax);

struct ExpandedMZIParams {
  BSParams bs2{0.5, 0.0};
  double eps3 = 0.8;   // tap on arm a towards mode c
  double eps4 = 0.8;   // tap on arm b towards mode d
  double gamma = 0.0;  // phase on the tapped b light
};

/// Modes a=0, b=1, c=2, d=3: BS(eps3) on (a,c), BS(eps4) on (b,d), BS(eps2)
/// on (a,b), PS(gamma) on d, BS(1/2) on (c,d). Detector k counts mode k.
Circuit default_expanded_circuit(const ExpandedMZIParams& params);

struct ExpandedObservable {
  /// One outcome per detector, labels 1..modes.
  DiscreteObservable observable;
  /// Row k: (tr E_k, tr E_k sx, tr E_k sy, tr E_k sz).
  RealMatrix coordinates;
  /// Singular values of the Gram matrix coordinates * coordinates^T.
  RealVector gram_singular_values;
  std::size_t rank = 0;
};

/// Count observable of the circuit on the single photon prepared in
/// span{|1 in mode input.first>, |1 in mode input.second>}.
ExpandedObservable expanded_mzi_observable(
    const Circuit& circuit, std::pair<std::size_t, std::size_t> input = {0, 1});

}  // namespace povmlab::mzi
