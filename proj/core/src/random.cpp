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

#include "povmlab/random.hpp"

#include <Eigen/QR>

namespace povmlab {
namespace {

Matrix ginibre(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Vector haar_random_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

Operator random_unitary(std::size_t dim, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return Operator(q);
}

Operator random_hermitian(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, rng);
  return Operator(0.5 * (g + g.adjoint()));
}

Operator random_density_matrix(std::size_t dim, Rng& rng) {
  const Matrix g = ginibre(dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return Operator(0.5 * (rho + rho.adjoint()));
}

Operator random_effect_operator(std::size_t dim, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Operator u = random_unitary(dim, rng);
  RealVector diag(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < diag.size(); ++i) diag(i) = uniform(rng);
  const Matrix m = u.matrix() * diag.cast<Complex>().asDiagonal() * u.matrix().adjoint();
  return Operator(0.5 * (m + m.adjoint()));
}

}  // namespace povmlab
