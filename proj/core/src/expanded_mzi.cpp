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
#include <string>

#include "povmlab/error.hpp"
#include "povmlab/mzi.hpp"
#include "povmlab/spin.hpp"

namespace povmlab::mzi {
namespace {

constexpr std::size_t kMaxCircuitDim = 4096;

// `op` on mode k of `modes` equal factors of dimension d.
Operator embed(const Operator& op, std::size_t k, std::size_t modes, std::size_t d) {
  std::vector<Operator> factors(modes, Operator::identity(d));
  factors[k] = op;
  return tensor(factors);
}

void check_mode(std::size_t mode, std::size_t modes) {
  if (mode >= modes) {
    throw ValidationError("circuit: mode " + std::to_string(mode) + " out of range (" +
                          std::to_string(modes) + " modes)");
  }
}

}  // namespace

Operator circuit_unitary(const Circuit& circuit, std::size_t nmax) {
  if (circuit.modes == 0) throw ValidationError("circuit: no modes");
  const std::size_t d = nmax + 1;
  std::size_t total = 1;
  for (std::size_t k = 0; k < circuit.modes; ++k) {
    total *= d;
    if (total > kMaxCircuitDim) throw ValidationError("circuit: Hilbert space too large");
  }
  const Operator a = annihilation(d);
  const Operator n = number(d);
  Operator u = Operator::identity(total).with_dims(std::vector<std::size_t>(circuit.modes, d));
  for (const auto& element : circuit.elements) {
    Operator step;
    if (const auto* bs = std::get_if<BeamSplitterElement>(&element)) {
      validate(bs->params);
      check_mode(bs->mode1, circuit.modes);
      check_mode(bs->mode2, circuit.modes);
      if (bs->mode1 == bs->mode2) throw ValidationError("circuit: beam splitter on one mode");
      const Operator ai = embed(a, bs->mode1, circuit.modes, d);
      const Operator aj = embed(a, bs->mode2, circuit.modes, d);
      const Complex alpha = std::polar(std::acos(std::sqrt(bs->params.eps)), bs->params.theta);
      step = expm(std::conj(alpha) * (ai * aj.adjoint()) - alpha * (ai.adjoint() * aj));
    } else {
      const auto& ps = std::get<PhaseShifterElement>(element);
      check_mode(ps.mode, circuit.modes);
      if (!std::isfinite(ps.delta)) throw ValidationError("circuit: phase is not finite");
      step = expm(Complex(0.0, ps.delta) * embed(n, ps.mode, circuit.modes, d));
    }
    u = step * u;
  }
  return u;
}

Circuit default_expanded_circuit(const ExpandedMZIParams& params) {
  Circuit c;
  c.modes = 4;
  c.elements = {
      BeamSplitterElement{{params.eps3, 0.0}, 0, 2},
      BeamSplitterElement{{params.eps4, 0.0}, 1, 3},
      BeamSplitterElement{params.bs2, 0, 1},
      PhaseShifterElement{params.gamma, 3},
      BeamSplitterElement{{0.5, 0.0}, 2, 3},
  };
  return c;
}

ExpandedObservable expanded_mzi_observable(const Circuit& circuit,
                                           std::pair<std::size_t, std::size_t> input) {
  check_mode(input.first, circuit.modes);
  check_mode(input.second, circuit.modes);
  if (input.first == input.second) throw ValidationError("circuit: input modes coincide");

  // One photon in total: a single photon per mode suffices and is exact.
  const Operator u = circuit_unitary(circuit, 1);
  const std::size_t modes = circuit.modes;
  const auto single = [modes](std::size_t k) {
    return basis_vector(std::size_t{1} << modes, std::size_t{1} << (modes - 1 - k));
  };
  Matrix v(static_cast<Eigen::Index>(u.dim()), 2);
  v.col(0) = u * single(input.first);
  v.col(1) = u * single(input.second);

  std::vector<Label> labels;
  std::vector<Operator> effects;
  RealMatrix coords(static_cast<Eigen::Index>(modes), 4);
  const Operator paulis[3] = {spin::pauli_x(), spin::pauli_y(), spin::pauli_z()};
  for (std::size_t k = 0; k < modes; ++k) {
    // Amplitudes <1_k| U |input_j>.
    const Matrix row = single(k).adjoint() * v;
    Operator e(row.adjoint() * row);
    const auto r = static_cast<Eigen::Index>(k);
    coords(r, 0) = e.trace().real();
    for (int s = 0; s < 3; ++s) coords(r, s + 1) = (e * paulis[s]).trace().real();
    labels.push_back({static_cast<int>(k + 1)});
    effects.push_back(std::move(e));
  }
  const RealMatrix gram = coords * coords.transpose();
  Eigen::JacobiSVD<RealMatrix> svd(gram);
  RealVector sv = svd.singularValues();
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-9) ++rank;
  }
  return {DiscreteObservable::from_operators(std::move(labels), std::move(effects)), coords,
          sv, rank};
}

}  // namespace povmlab::mzi
