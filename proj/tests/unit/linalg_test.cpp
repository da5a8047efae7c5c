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

#include "povmlab/linalg.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "povmlab/error.hpp"
#include "povmlab/random.hpp"
#include "povmlab/spin.hpp"

namespace povmlab {
namespace {

Operator ladder(std::size_t d) {
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 1; k < a.rows(); ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(a);
}

// Truncated Taylor series; fine for generators of small norm.
Matrix taylor_exp(const Matrix& a) {
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

TEST(linalg, tensor_of_identities_is_identity) {
  const Operator t = tensor(Operator::identity(2), Operator::identity(3));
  EXPECT_EQ(t.dim(), 6u);
  EXPECT_EQ(max_abs_diff(t, Operator::identity(6)), 0.0);
  EXPECT_EQ(t.dims(), (std::vector<std::size_t>{2, 3}));
}

TEST(linalg, tensor_sigma_z_spectrum) {
  const auto eig = eigh(tensor(spin::pauli_z(), Operator::identity(2)));
  EXPECT_NEAR(eig.values(0), -1.0, 1e-14);
  EXPECT_NEAR(eig.values(1), -1.0, 1e-14);
  EXPECT_NEAR(eig.values(2), 1.0, 1e-14);
  EXPECT_NEAR(eig.values(3), 1.0, 1e-14);
}

TEST(linalg, tensor_ladder_pattern_matches_index_arithmetic) {
  // (a (x) b^dag)|m, n> = sqrt(m) sqrt(n+1) |m-1, n+1>.
  const std::size_t d = 3;
  const Operator a = ladder(d);
  const Operator t = tensor(a, a.adjoint());
  for (std::size_t r = 0; r < d * d; ++r) {
    for (std::size_t c = 0; c < d * d; ++c) {
      const std::size_t m = c / d, n = c % d;
      double expected = 0.0;
      if (m >= 1 && n + 1 < d && r == (m - 1) * d + (n + 1)) {
        expected = std::sqrt(static_cast<double>(m)) * std::sqrt(static_cast<double>(n + 1));
      }
      EXPECT_NEAR(std::abs(t(r, c)), expected, 1e-14) << r << "," << c;
    }
  }
}

TEST(linalg, tensor_is_associative) {
  // Integer entries make every product exact, so equality is bitwise.
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> pick(-4, 4);
  const auto integer_op = [&](Eigen::Index n) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(pick(gen), pick(gen));
    return Operator(m);
  };
  const Operator a = integer_op(2), b = integer_op(3), c = integer_op(2);
  EXPECT_EQ(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 0.0);

  // General complex entries only agree up to rounding of the triple products.
  Rng rng(11);
  const Operator x = random_hermitian(2, rng);
  const Operator y = random_hermitian(3, rng);
  const Operator z = random_hermitian(2, rng);
  EXPECT_LT(max_abs_diff(tensor(tensor(x, y), z), tensor(x, tensor(y, z))), 1e-15);
}

TEST(linalg, tensor_dims_concatenate) {
  const Operator ab = tensor(Operator::identity(2), Operator::identity(3));
  const Operator abc = tensor(ab, Operator::identity(4));
  EXPECT_EQ(abc.dims(), (std::vector<std::size_t>{2, 3, 4}));
}

TEST(linalg, partial_trace_of_product) {
  Rng rng(3);
  const Operator rho = random_density_matrix(3, rng);
  const Operator sigma = random_density_matrix(2, rng);
  const Operator keep1 = partial_trace(tensor(rho, sigma), {1});
  EXPECT_LT(max_abs_diff(keep1, sigma * rho.trace()), 1e-12);
  const Operator keep0 = partial_trace(tensor(rho, sigma), {0});
  EXPECT_LT(max_abs_diff(keep0, rho * sigma.trace()), 1e-12);
}

TEST(linalg, partial_trace_preserves_trace) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator g = random_hermitian(12, rng);
    const Operator a = (g * g).with_dims({3, 2, 2});
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t keep[] = {k};
      EXPECT_NEAR(std::abs(partial_trace(a, keep).trace() - a.trace()), 0.0, 1e-12);
    }
  }
}

TEST(linalg, partial_trace_against_index_sum) {
  Rng rng(8);
  const Matrix m = random_hermitian(12, rng).matrix();
  const Operator a(m, {2, 3, 2});
  const Operator got = partial_trace(a, {0, 2});
  // Keep factors 0 and 2: out(i k, j l) = sum_b m(i b k, j b l).
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          Complex s = 0.0;
          for (int b = 0; b < 3; ++b) s += m((i * 3 + b) * 2 + k, (j * 3 + b) * 2 + l);
          EXPECT_NEAR(std::abs(got(static_cast<std::size_t>(i * 2 + k),
                                   static_cast<std::size_t>(j * 2 + l)) -
                               s),
                      0.0, 1e-13);
        }
}

TEST(linalg, reduced_state_of_single_photon_superposition) {
  Vector v = Vector::Zero(4);
  v(2) = 1.0 / std::sqrt(2.0);  // |10>
  v(1) = 1.0 / std::sqrt(2.0);  // |01>
  const Operator p = Operator::projector(v).with_dims({2, 2});
  EXPECT_LT(max_abs_diff(partial_trace(p, {0}), 0.5 * Operator::identity(2)), 1e-15);
  EXPECT_LT(max_abs_diff(partial_trace(p, {1}), 0.5 * Operator::identity(2)), 1e-15);
}

TEST(linalg, partial_trace_requires_dims) {
  EXPECT_THROW(partial_trace(Operator::identity(4), {0}), DimensionError);
  EXPECT_THROW(partial_trace(Operator::identity(4).with_dims({2, 2}), {2}), DimensionError);
}

TEST(linalg, dims_must_multiply_out) {
  EXPECT_THROW(Operator(Matrix::Identity(4, 4), {3, 2}), DimensionError);
  EXPECT_THROW(Operator(Matrix::Zero(2, 3)), DimensionError);
}

TEST(linalg, expm_zero_is_identity) {
  EXPECT_LT(max_abs_diff(expm(Operator::zero(5)), Operator::identity(5)), 1e-15);
}

TEST(linalg, expm_rotation_closed_form) {
  // exp(i t sigma_y) = cos t I + i sin t sigma_y.
  for (double t : {0.1, 0.7, 1.9, -2.4}) {
    const Operator u = expm(Complex(0.0, t) * spin::pauli_y());
    const Operator want = std::cos(t) * Operator::identity(2) +
                          Complex(0.0, std::sin(t)) * spin::pauli_y();
    EXPECT_LT(max_abs_diff(u, want), 1e-14) << t;
  }
}

TEST(linalg, expm_matches_taylor_series) {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h = random_hermitian(6, rng);
    const Operator k = Complex(0.0, 0.3) * h;
    EXPECT_LT((expm(k).matrix() - taylor_exp(k.matrix())).cwiseAbs().maxCoeff(), 1e-12);
    // Non-normal input goes through the general path.
    const Operator g(0.2 * h.matrix() + 0.1 * random_hermitian(6, rng).matrix() *
                                            Complex(0.0, 1.0) * h.matrix());
    EXPECT_LT((expm(g).matrix() - taylor_exp(g.matrix())).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(linalg, expm_inverse_and_unitarity) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator k = Complex(0.0, 1.0) * random_hermitian(8, rng);
    const Operator u = expm(k);
    EXPECT_LT(max_abs_diff(u * expm(-1.0 * k), Operator::identity(8)), 1e-10);
    EXPECT_TRUE(is_unitary(u));
  }
}

TEST(linalg, expm_preserves_block_structure) {
  // Generator mixing only indices {0,1} and {2,3}: blocks stay exactly separate.
  Rng rng(9);
  const Matrix h1 = random_hermitian(2, rng).matrix();
  const Matrix h2 = random_hermitian(2, rng).matrix();
  Matrix g = Matrix::Zero(4, 4);
  g.block(0, 0, 2, 2) = Complex(0.0, 1.0) * h1;
  g.block(2, 2, 2, 2) = Complex(0.0, 1.0) * h2;
  const Matrix u = expm(Operator(g)).matrix();
  EXPECT_LT(u.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(u.block(2, 0, 2, 2).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(linalg, eigh_basics) {
  const auto id = eigh(Operator::identity(3));
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(id.values(i), 1.0, 1e-15);
  const auto x = eigh(spin::pauli_x());
  EXPECT_NEAR(x.values(0), -1.0, 1e-15);
  EXPECT_NEAR(x.values(1), 1.0, 1e-15);
}

TEST(linalg, eigh_reconstructs_random_hermitian) {
  Rng rng(16);
  const Operator h = random_hermitian(16, rng);
  const auto eig = eigh(h);
  const Matrix back = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  EXPECT_LT((back - h.matrix()).cwiseAbs().maxCoeff(), 1e-9);
  for (Eigen::Index i = 1; i < eig.values.size(); ++i) {
    EXPECT_LE(eig.values(i - 1), eig.values(i));
  }
  EXPECT_TRUE(is_unitary(Operator(eig.vectors)));
}

TEST(linalg, eigh_rejects_non_hermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigh(Operator(m)), ValidationError);
}

TEST(linalg, predicates) {
  EXPECT_TRUE(is_projection(Operator::projector(basis_vector(3, 1))));
  EXPECT_FALSE(is_projection(0.5 * Operator::identity(2)));
  EXPECT_TRUE(is_hermitian(spin::pauli_y()));
  EXPECT_NEAR(operator_norm(2.0 * spin::pauli_x()), 2.0, 1e-14);
  EXPECT_EQ(matrix_rank(Matrix::Identity(3, 3)), 3u);
  EXPECT_TRUE(is_unit(basis_vector(4, 2)));
  EXPECT_THROW(basis_vector(2, 2), DimensionError);
  // [sx, sy] = 2 i sz.
  EXPECT_LT(max_abs_diff(commutator(spin::pauli_x(), spin::pauli_y()),
                         Complex(0.0, 2.0) * spin::pauli_z()),
            1e-15);
}

TEST(linalg, sqrt_psd_squares_back) {
  Rng rng(30);
  const Operator p = random_density_matrix(5, rng);
  const Operator r = sqrt_psd(p);
  EXPECT_LT(max_abs_diff(r * r, p), 1e-12);
  EXPECT_GE(min_eigenvalue(r), -1e-12);
}

}  // namespace
}  // namespace povmlab
