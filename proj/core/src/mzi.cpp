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

#include "povmlab/mzi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "povmlab/error.hpp"

namespace povmlab::mzi {
namespace {

double binomial(std::size_t n, std::size_t k) {
  double out = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    out *= static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return out;
}

double wrap_angle(double t) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(t, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

}  // namespace

void validate(const BSParams& p) {
  if (!(p.eps >= 0.0 && p.eps <= 1.0) || !std::isfinite(p.theta)) {
    throw ValidationError("beam splitter: transparency " + std::to_string(p.eps) +
                          " outside [0, 1]");
  }
}

Operator annihilation(std::size_t dim) {
  if (dim == 0) throw DimensionError("annihilation: dim must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(std::move(a));
}

Operator number(std::size_t dim) {
  if (dim == 0) throw DimensionError("number: dim must be positive");
  return Operator::diagonal(RealVector::LinSpaced(static_cast<Eigen::Index>(dim), 0.0,
                                                  static_cast<double>(dim - 1)));
}

Vector fock_vector(std::size_t dim, std::size_t n) { return basis_vector(dim, n); }

State number_state(std::size_t dim, std::size_t n) { return State::pure(fock_vector(dim, n)); }

Operator beam_splitter(const BSParams& params, const FockSpace& space) {
  validate(params);
  const std::size_t d = space.dim();
  const double mag = std::acos(std::sqrt(params.eps));
  const Complex alpha = std::polar(mag, params.theta);
  const Operator a = annihilation(d);
  const Operator adag = a.adjoint();
  const Operator gen = std::conj(alpha) * tensor(a, adag) - alpha * tensor(adag, a);
  return expm(gen);
}

Operator phase_shifter(double delta, const FockSpace& space) {
  const std::size_t d = space.dim();
  Vector phases(static_cast<Eigen::Index>(d * d));
  for (std::size_t n1 = 0; n1 < d; ++n1) {
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      phases(static_cast<Eigen::Index>(n1 * d + n2)) =
          std::polar(1.0, delta * static_cast<double>(n1));
    }
  }
  return Operator(phases.asDiagonal().toDenseMatrix(), {d, d});
}

Operator mzi_unitary(const MZIParams& params, const FockSpace& space) {
  return beam_splitter(params.bs2, space) * phase_shifter(params.delta, space) *
         beam_splitter(params.bs1, space);
}

State mzi_output_state(const State& a_state, const State& b_state, const MZIParams& params,
                       const FockSpace& space) {
  if (a_state.dim() != space.dim() || b_state.dim() != space.dim()) {
    throw DimensionError("mzi_output_state: mode states must have dim nmax+1");
  }
  const Operator u = mzi_unitary(params, space);
  const Operator w = u * tensor(a_state.op(), b_state.op()) * u.adjoint();
  return State(w);
}

RealMatrix detection_probabilities(const State& w, const FockSpace& space) {
  const std::size_t d = space.dim();
  if (w.dim() != d * d) throw DimensionError("detection_probabilities: state is not two-mode");
  RealMatrix p(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t n1 = 0; n1 < d; ++n1) {
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      double v = w.op()(n1 * d + n2, n1 * d + n2).real();
      if (v < 0.0 && v >= -tol::kPositivity) v = 0.0;
      p(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2)) = v;
    }
  }
  return p;
}

double effective_transparency(const MZIParams& params) {
  validate(params.bs1);
  validate(params.bs2);
  const double e1 = params.bs1.eps;
  const double e2 = params.bs2.eps;
  const double cross = std::sqrt(e1 * (1.0 - e1) * e2 * (1.0 - e2));
  const double eps = e1 * e2 + (1.0 - e1) * (1.0 - e2) -
                     2.0 * cross * std::cos(params.bs2.theta - params.bs1.theta - params.delta);
  return std::clamp(eps, 0.0, 1.0);
}

MeasurementScheme mzi_scheme(const MZIParams& params, const FockSpace& space,
                             const State& b_state) {
  const std::size_t d = space.dim();
  if (b_state.dim() != d) throw DimensionError("mzi_scheme: b-mode state must have dim nmax+1");
  std::vector<Label> labels;
  std::vector<Operator> counts;
  for (std::size_t n1 = 0; n1 < d; ++n1) {
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      labels.push_back({static_cast<int>(n1), static_cast<int>(n2)});
      counts.push_back(Operator::projector(basis_vector(d * d, n1 * d + n2)));
    }
  }
  MeasurementScheme scheme;
  scheme.system_dim = d;
  scheme.coupling = mzi_unitary(params, space);
  scheme.probe_state = b_state;
  scheme.pointer = DiscreteObservable::from_operators(std::move(labels), std::move(counts));
  scheme.support = PointerSupport::kJoint;
  return scheme;
}

DiscreteObservable induced_mzi_observable(const MZIParams& params, const FockSpace& space) {
  const double eps = effective_transparency(params);
  const std::size_t d = space.dim();
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t n1 = 0; n1 < d; ++n1) {
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      labels.push_back({static_cast<int>(n1), static_cast<int>(n2)});
      Operator e = Operator::zero(d);
      if (n1 + n2 < d) {
        const double w = binomial(n1 + n2, n1) * std::pow(eps, static_cast<double>(n1)) *
                         std::pow(1.0 - eps, static_cast<double>(n2));
        e = w * Operator::projector(basis_vector(d, n1 + n2));
      }
      effects.push_back(std::move(e));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

DiscreteObservable smeared_number_observable(double eps, const FockSpace& space) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("smeared_number_observable: eps");
  const std::size_t d = space.dim();
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t n = 0; n < d; ++n) {
    RealVector diag = RealVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t m = n; m < d; ++m) {
      diag(static_cast<Eigen::Index>(m)) = binomial(m, n) *
                                           std::pow(eps, static_cast<double>(n)) *
                                           std::pow(1.0 - eps, static_cast<double>(m - n));
    }
    labels.push_back({static_cast<int>(n)});
    effects.push_back(Operator::diagonal(diag));
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

BSParams equivalent_beam_splitter(const MZIParams& params, const FockSpace& space) {
  if (space.nmax < 1) throw DimensionError("equivalent_beam_splitter: need nmax >= 1");
  const std::size_t d = space.dim();
  const Operator u = mzi_unitary(params, space);
  const Matrix v = single_photon_isometry(space);
  // E(1,0) on span{|10>, |01>} is P[U_gamma^dag |10>] with
  // U_gamma^dag |10> = c|10> - s e^{-i theta}|01>, so <10|E|01> = -c s e^{i theta}.
  const Matrix row = u.matrix().row(static_cast<Eigen::Index>(d)) * v;
  const Matrix e = row.adjoint() * row;
  const double eps = std::clamp(e(0, 0).real(), 0.0, 1.0);
  const Complex off = e(0, 1);
  const double theta = std::abs(off) < 1e-14 ? 0.0 : wrap_angle(std::arg(-off));
  return {eps, theta};
}

Matrix single_photon_isometry(const FockSpace& space) {
  if (space.nmax < 1) throw DimensionError("single_photon_isometry: need nmax >= 1");
  const std::size_t d = space.dim();
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(d * d), 2);
  v(static_cast<Eigen::Index>(d), 0) = 1.0;  // |10>
  v(1, 1) = 1.0;                             // |01>
  return v;
}

Vector single_photon_state(double eps1, double theta1, double delta) {
  if (!(eps1 >= 0.0 && eps1 <= 1.0)) throw ValidationError("single_photon_state: eps1");
  Vector psi(2);
  psi << std::sqrt(eps1), std::polar(std::sqrt(1.0 - eps1), -(theta1 + delta));
  return psi;
}

DiscreteObservable single_photon_observable(double eps2, double theta2) {
  validate(BSParams{eps2, theta2});
  Vector v(2);
  v << std::sqrt(eps2), -std::polar(std::sqrt(1.0 - eps2), -theta2);
  const Operator f10 = Operator::projector(v);
  return DiscreteObservable::from_operators({{1, 0}, {0, 1}},
                                            {f10, Operator::identity(2) - f10});
}

}  // namespace povmlab::mzi
