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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "povmlab/error.hpp"

namespace povmlab {
namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

std::vector<std::size_t> factor_list(const Operator& op) {
  return op.has_dims() ? op.dims() : std::vector<std::size_t>{op.dim()};
}

std::vector<std::size_t> merged_dims(const Operator& lhs, const Operator& rhs) {
  if (!rhs.has_dims() || lhs.dims() == rhs.dims()) return lhs.dims();
  if (!lhs.has_dims()) return rhs.dims();
  return {};
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension " +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

}  // namespace

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("Operator: matrix must be square");
  }
}

Operator::Operator(Matrix entries, std::vector<std::size_t> dims)
    : Operator(std::move(entries)) {
  if (!dims.empty() && product(dims) != dim()) {
    throw DimensionError("Operator: factor dimensions do not multiply to " +
                         std::to_string(dim()));
  }
  dims_ = std::move(dims);
}

Operator Operator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Identity(n, n));
}

Operator Operator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Operator(Matrix::Zero(n, n));
}

Operator Operator::projector(const Vector& v) { return Operator(v * v.adjoint()); }

Operator Operator::diagonal(const RealVector& diag) {
  return Operator(diag.cast<Complex>().asDiagonal());
}

Operator Operator::with_dims(std::vector<std::size_t> dims) const {
  return Operator(m_, std::move(dims));
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), dims_); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator+");
  m_ += other.m_;
  dims_ = merged_dims(*this, other);
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator-");
  m_ -= other.m_;
  dims_ = merged_dims(*this, other);
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  m_ *= scale;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  return Operator(lhs.m_ * rhs.m_, merged_dims(lhs, rhs));
}

Vector operator*(const Operator& op, const Vector& v) {
  if (static_cast<std::size_t>(v.size()) != op.dim()) {
    throw DimensionError("operator*vector: dimension mismatch");
  }
  return op.m_ * v;
}

Operator tensor(const Operator& a, const Operator& b) {
  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  Matrix out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Eigen::Index i = 0; i < am.rows(); ++i) {
    for (Eigen::Index j = 0; j < am.cols(); ++j) {
      out.block(i * bm.rows(), j * bm.cols(), bm.rows(), bm.cols()) = am(i, j) * bm;
    }
  }
  auto dims = factor_list(a);
  const auto rhs = factor_list(b);
  dims.insert(dims.end(), rhs.begin(), rhs.end());
  return Operator(std::move(out), std::move(dims));
}

Operator tensor(std::span<const Operator> factors) {
  if (factors.empty()) throw DimensionError("tensor: no factors");
  Operator out = factors.front();
  if (!out.has_dims()) out = out.with_dims({out.dim()});
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Operator partial_trace(const Operator& a, std::span<const std::size_t> keep) {
  if (!a.has_dims()) {
    throw DimensionError("partial_trace: operator has no factor dimensions");
  }
  const auto& dims = a.dims();
  const std::size_t nfactors = dims.size();
  std::vector<bool> kept(nfactors, false);
  for (std::size_t k : keep) {
    if (k >= nfactors) {
      throw DimensionError("partial_trace: factor index " + std::to_string(k) +
                           " out of range");
    }
    kept[k] = true;
  }

  std::vector<std::size_t> kept_dims;
  std::size_t kept_size = 1;
  std::size_t traced_size = 1;
  for (std::size_t f = 0; f < nfactors; ++f) {
    if (kept[f]) {
      kept_dims.push_back(dims[f]);
      kept_size *= dims[f];
    } else {
      traced_size *= dims[f];
    }
  }

  // full_index[k * traced_size + t] is the row of a for kept multi-index k and
  // traced multi-index t.
  std::vector<std::size_t> full_index(a.dim());
  std::vector<std::size_t> digits(nfactors, 0);
  for (std::size_t full = 0; full < a.dim(); ++full) {
    std::size_t rem = full;
    for (std::size_t f = nfactors; f-- > 0;) {
      digits[f] = rem % dims[f];
      rem /= dims[f];
    }
    std::size_t k = 0;
    std::size_t t = 0;
    for (std::size_t f = 0; f < nfactors; ++f) {
      if (kept[f]) {
        k = k * dims[f] + digits[f];
      } else {
        t = t * dims[f] + digits[f];
      }
    }
    full_index[k * traced_size + t] = full;
  }

  const Matrix& m = a.matrix();
  const auto n = static_cast<Eigen::Index>(kept_size);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < kept_size; ++i) {
    for (std::size_t j = 0; j < kept_size; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < traced_size; ++t) {
        acc += m(static_cast<Eigen::Index>(full_index[i * traced_size + t]),
                 static_cast<Eigen::Index>(full_index[j * traced_size + t]));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  }
  if (kept_dims.empty()) return Operator(std::move(out));
  return Operator(std::move(out), std::move(kept_dims));
}

Operator partial_trace(const Operator& a, std::initializer_list<std::size_t> keep) {
  return partial_trace(a, std::span<const std::size_t>(keep.begin(), keep.size()));
}

Operator expm(const Operator& a) {
  const Matrix& m = a.matrix();
  const double anti_defect = (m + m.adjoint()).cwiseAbs().maxCoeff();
  if (a.dim() == 0) return a;
  if (anti_defect <= 1e-12) {
    // a = -i h with h = i a Hermitian.
    const Matrix h = Complex(0.0, 1.0) * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
    const RealVector& w = solver.eigenvalues();
    Vector phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -w(k));
    const Matrix& v = solver.eigenvectors();
    return Operator(v * phases.asDiagonal() * v.adjoint(), a.dims());
  }
  return Operator(m.exp(), a.dims());
}

EigenDecomposition eigh(const Operator& h) {
  if (!is_hermitian(h)) {
    throw ValidationError("eigh: operator is not Hermitian (defect " +
                          std::to_string(hermiticity_defect(h)) + ")");
  }
  const Matrix& m = h.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_abs(const Operator& a) {
  return a.dim() == 0 ? 0.0 : a.matrix().cwiseAbs().maxCoeff();
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  return a.dim() == 0 ? 0.0 : (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Operator& a) {
  return a.dim() == 0 ? 0.0 : (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double tolerance) {
  return hermiticity_defect(a) <= tolerance;
}

bool is_unitary(const Operator& u, double tolerance) {
  const auto n = static_cast<Eigen::Index>(u.dim());
  const Matrix defect = u.matrix().adjoint() * u.matrix() - Matrix::Identity(n, n);
  return n == 0 || defect.cwiseAbs().maxCoeff() <= tolerance;
}

bool is_projection(const Operator& p, double tolerance) {
  if (!is_hermitian(p, tolerance)) return false;
  return max_abs_diff(p * p, p) <= tolerance;
}

double min_eigenvalue(const Operator& h) { return eigh(h).values.minCoeff(); }

double max_eigenvalue(const Operator& h) { return eigh(h).values.maxCoeff(); }

double operator_norm(const Operator& a) {
  if (a.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a.matrix());
  return svd.singularValues()(0);
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator sqrt_psd(const Operator& h) {
  const auto eig = eigh(h);
  RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return Operator(eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint(),
                  h.dims());
}

std::size_t matrix_rank(const Matrix& m, double tolerance) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return static_cast<std::size_t>((s.array() > tolerance).count());
}

Vector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_vector: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

bool is_unit(const Vector& v, double tolerance) {
  return std::abs(v.norm() - 1.0) <= tolerance;
}

}  // namespace povmlab
