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
 * Dense complex linear algebra on finite-dimensional Hilbert spaces.
 *
 * Every operator in the library (effects, states, unitaries, projections) is
 * an Operator: a square complex matrix plus an optional list of tensor
 * factor dimensions. All functions here are pure.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace povmlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Library-wide numerical tolerances.
namespace tol {
inline constexpr double kHermitian = 1e-10;     // entrywise max |A - A^dag|
inline constexpr double kPositivity = 1e-10;    // min eigenvalue >= -kPositivity
inline constexpr double kCompleteness = 1e-9;   // |sum of effects - I|
inline constexpr double kUnitEigenvalue = 1e-8; // eigenvalue counted as 1 (or 0)
inline constexpr double kProjection = 1e-8;     // |P^2 - P| for projections
inline constexpr double kUnitVector = 1e-12;
}  // namespace tol

class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix entries);
  Operator(Matrix entries, std::vector<std::size_t> dims);

  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);
  /// |v><v| (not normalised).
  static Operator projector(const Vector& v);
  /// Diagonal operator with the given real diagonal.
  static Operator diagonal(const RealVector& diag);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  bool has_dims() const { return !dims_.empty(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  Operator with_dims(std::vector<std::size_t> dims) const;
  Operator without_dims() const { return Operator(m_); }

  Operator adjoint() const;
  Complex trace() const { return m_.trace(); }

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(Operator op, Complex scale) { return op *= scale; }
  friend Operator operator*(Complex scale, Operator op) { return op *= scale; }
  friend Operator operator*(Operator op, double scale) { return op *= Complex(scale, 0.0); }
  friend Operator operator*(double scale, Operator op) { return op *= Complex(scale, 0.0); }
  friend Vector operator*(const Operator& op, const Vector& v);

 private:
  Matrix m_;
  std::vector<std::size_t> dims_;
};

/// Real eigenvalues (ascending) and the unitary whose columns are the
/// matching eigenvectors.
struct EigenDecomposition {
  RealVector values;
  Matrix vectors;
};

/// Kronecker product; factor lists are concatenated (an operator without
/// factor metadata counts as a single factor).
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(std::span<const Operator> factors);
Vector tensor(const Vector& a, const Vector& b);

/// Trace over every factor not listed in `keep`. Throws DimensionError when
/// `a` has no factor metadata or `keep` names a missing factor.
Operator partial_trace(const Operator& a, std::span<const std::size_t> keep);
Operator partial_trace(const Operator& a, std::initializer_list<std::size_t> keep);

/// Matrix exponential. Anti-Hermitian input is exponentiated through the
/// eigendecomposition of iA, so the result is unitary to rounding.
Operator expm(const Operator& a);

/// Hermitian eigendecomposition; throws ValidationError if `h` is not
/// Hermitian within tol::kHermitian.
EigenDecomposition eigh(const Operator& h);

double max_abs(const Operator& a);
double max_abs_diff(const Operator& a, const Operator& b);
double hermiticity_defect(const Operator& a);
bool is_hermitian(const Operator& a, double tolerance = tol::kHermitian);
bool is_unitary(const Operator& u, double tolerance = tol::kHermitian);
bool is_projection(const Operator& p, double tolerance = tol::kProjection);
double min_eigenvalue(const Operator& h);
double max_eigenvalue(const Operator& h);
/// Largest singular value.
double operator_norm(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
/// Principal square root of a positive semidefinite operator; tiny negative
/// eigenvalues from rounding are clamped to zero.
Operator sqrt_psd(const Operator& h);
/// Numerical rank from singular values above `tolerance`.
std::size_t matrix_rank(const Matrix& m, double tolerance = 1e-9);

Vector basis_vector(std::size_t dim, std::size_t index);
bool is_unit(const Vector& v, double tolerance = tol::kUnitVector);

}  // namespace povmlab
