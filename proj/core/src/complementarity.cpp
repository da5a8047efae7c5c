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

#include "povmlab/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povmlab/error.hpp"
#include "povmlab/spin.hpp"

namespace povmlab {
namespace {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Number of (near-)zero eigenvalues of (I - P) + (I - Q).
Eigen::Index meet_rank(const Matrix& p, const Matrix& q, double tolerance) {
  const auto n = p.rows();
  const Matrix m = 2.0 * Matrix::Identity(n, n) - p - q;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  return (solver.eigenvalues().array() < tolerance).count();
}

bool is_trivial(const Operator& e, double tolerance) {
  return max_abs(e) <= tolerance || max_abs_diff(e, Operator::identity(e.dim())) <= tolerance;
}

// Per outcome-set data: E(X) trivial?, and the eigenvalue-1 projections of
// E(X) and I - E(X).
struct SubsetInfo {
  bool trivial = false;
  Matrix one;
  Matrix zero;
  bool one_empty = true;
  bool zero_empty = true;
};

std::vector<SubsetInfo> subset_table(const DiscreteObservable& obs,
                                     const ComplementarityOptions& opt) {
  const unsigned long long count = 1ULL << obs.size();
  const Operator id = Operator::identity(obs.dim());
  std::vector<SubsetInfo> table(count);
  for (unsigned long long mask = 0; mask < count; ++mask) {
    const Operator e = obs.sum_over_mask(mask);
    SubsetInfo& info = table[mask];
    info.trivial = is_trivial(e, opt.projection);
    if (info.trivial) continue;
    info.one = eigenspace_one(e, opt.unit_eigenvalue).matrix();
    info.zero = eigenspace_one(id - e, opt.unit_eigenvalue).matrix();
    info.one_empty = info.one.cwiseAbs().maxCoeff() < 0.5 * opt.projection;
    info.zero_empty = info.zero.cwiseAbs().maxCoeff() < 0.5 * opt.projection;
  }
  return table;
}

bool meets_trivially(const Matrix& p, bool p_empty, const Matrix& q, bool q_empty,
                     double tolerance) {
  if (p_empty || q_empty) return true;
  return meet_rank(p, q, tolerance) == 0;
}

void check_pair(const DiscreteObservable& e1, const DiscreteObservable& e2,
                const ComplementarityOptions& opt, const char* what) {
  if (e1.dim() != e2.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
  if (e1.size() + e2.size() > opt.max_total_outcomes) {
    throw ValidationError(std::string(what) + ": too many outcomes to enumerate subsets");
  }
}

}  // namespace

Operator eigenspace_one(const Operator& effect, double threshold) {
  const auto eig = eigh(effect);
  const auto n = static_cast<Eigen::Index>(effect.dim());
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(eig.values(k) - 1.0) <= threshold) {
      p.noalias() += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    }
  }
  return Operator(std::move(p));
}

Operator meet_projections(const Operator& p, const Operator& q, double tolerance) {
  if (p.dim() != q.dim()) throw DimensionError("meet_projections: dimension mismatch");
  if (!is_projection(p, tolerance) || !is_projection(q, tolerance)) {
    throw ValidationError("meet_projections: inputs must be orthogonal projections");
  }
  const auto n = static_cast<Eigen::Index>(p.dim());
  const Matrix m = 2.0 * Matrix::Identity(n, n) - p.matrix() - q.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (solver.eigenvalues()(k) < tolerance) {
      out.noalias() += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
    }
  }
  return Operator(std::move(out));
}

bool are_complementary(const DiscreteObservable& e1, const DiscreteObservable& e2,
                       const ComplementarityOptions& opt) {
  check_pair(e1, e2, opt, "are_complementary");
  if (!e1.is_projection_valued(opt.projection) || !e2.is_projection_valued(opt.projection)) {
    throw ValidationError("are_complementary: observables must be projection valued");
  }
  const auto t1 = subset_table(e1, opt);
  const auto t2 = subset_table(e2, opt);
  const unsigned long long full1 = t1.size() - 1;
  const unsigned long long full2 = t2.size() - 1;
  bool any_pair = false;
  for (unsigned long long x = 0; x <= full1; ++x) {
    if (t1[x].trivial) continue;
    for (unsigned long long y = 0; y <= full2; ++y) {
      if (t2[y].trivial) continue;
      any_pair = true;
      // For a projection E(X), its eigenvalue-1 space is its range and
      // E(X^c) = I - E(X) has range equal to the eigenvalue-0 space.
      const auto& px = t1[x];
      const auto& py = t2[y];
      const auto& pyc = t2[full2 ^ y];
      const auto& pxc = t1[full1 ^ x];
      if (!meets_trivially(px.one, px.one_empty, py.one, py.one_empty, opt.projection) ||
          !meets_trivially(px.one, px.one_empty, pyc.one, pyc.one_empty, opt.projection) ||
          !meets_trivially(pxc.one, pxc.one_empty, py.one, py.one_empty, opt.projection)) {
        return false;
      }
    }
  }
  return any_pair;
}

bool are_prob_complementary(const DiscreteObservable& e1, const DiscreteObservable& e2,
                            const ComplementarityOptions& opt) {
  check_pair(e1, e2, opt, "are_prob_complementary");
  const auto t1 = subset_table(e1, opt);
  const auto t2 = subset_table(e2, opt);
  bool any_pair = false;
  for (std::size_t x = 0; x < t1.size(); ++x) {
    if (t1[x].trivial) continue;
    for (std::size_t y = 0; y < t2.size(); ++y) {
      if (t2[y].trivial) continue;
      any_pair = true;
      const auto& a = t1[x];
      const auto& b = t2[y];
      // p1 = 1 and p2 in {0, 1}, then p2 = 1 and p1 = 0.
      if (!meets_trivially(a.one, a.one_empty, b.one, b.one_empty, opt.projection) ||
          !meets_trivially(a.one, a.one_empty, b.zero, b.zero_empty, opt.projection) ||
          !meets_trivially(a.zero, a.zero_empty, b.one, b.one_empty, opt.projection)) {
        return false;
      }
    }
  }
  return any_pair;
}

namespace {

struct QubitEffect {
  double e0;
  Eigen::Vector3d e;  // E = e0 I + e.sigma
};

QubitEffect decompose(const Operator& op) {
  const spin::BlochVector v = spin::bloch_vector(op);
  return {0.5 * op.trace().real(), 0.5 * v};
}

// For a candidate vector part g of G = g0 I + g.sigma, the admissible g0
// form [lo, hi]; the returned slack is hi - lo.
struct Window {
  double lo;
  double hi;
};

Window window(const QubitEffect& a, const QubitEffect& b, const Eigen::Vector3d& g) {
  const double hi = std::min(a.e0 - (a.e - g).norm(), b.e0 - (b.e - g).norm());
  const double lo = std::max(g.norm(), (g - a.e - b.e).norm() + a.e0 + b.e0 - 1.0);
  return {lo, hi};
}

Operator qubit_operator(double g0, const Eigen::Vector3d& g) {
  return Operator(g0 * Matrix::Identity(2, 2) + g.x() * spin::pauli_x().matrix() +
                  g.y() * spin::pauli_y().matrix() + g.z() * spin::pauli_z().matrix());
}

Label concat(const Label& x, const Label& y) {
  Label out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::optional<DiscreteObservable> assemble(const DiscreteObservable& e1,
                                           const DiscreteObservable& e2, const Operator& g) {
  const Operator& a = e1.effect(0).op();
  const Operator& b = e2.effect(0).op();
  const auto& x = e1.outcomes();
  const auto& y = e2.outcomes();
  try {
    return DiscreteObservable::from_operators(
        {concat(x[0], y[0]), concat(x[0], y[1]), concat(x[1], y[0]), concat(x[1], y[1])},
        {g, a - g, b - g, Operator::identity(2) - a - b + g});
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace

JointSearchResult joint_observable_search(const DiscreteObservable& e1,
                                          const DiscreteObservable& e2) {
  if (e1.dim() != 2 || e2.dim() != 2) {
    throw DimensionError("joint_observable_feasible: only qubit observables are supported");
  }
  if (e1.size() != 2 || e2.size() != 2) {
    throw ValidationError("joint_observable_feasible: observables must be two-valued");
  }
  const Operator& a = e1.effect(0).op();
  const Operator& b = e2.effect(0).op();
  JointSearchResult result;

  if (max_abs(commutator(a, b)) <= tol::kHermitian) {
    result.method = "commuting";
    result.feasible = true;
    std::vector<Label> labels;
    std::vector<Operator> effects;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < 2; ++k) {
        labels.push_back(concat(e1.outcomes()[i], e2.outcomes()[k]));
        effects.emplace_back(hermitian_part((e1.effect(i).op() * e2.effect(k).op()).matrix()));
      }
    }
    result.witness = DiscreteObservable::from_operators(std::move(labels), std::move(effects));
    return result;
  }

  const bool spin_form = std::abs(a.trace().real() - 1.0) <= tol::kHermitian &&
                         std::abs(b.trace().real() - 1.0) <= tol::kHermitian;
  if (spin_form) {
    result.method = "spin";
    const spin::BlochVector a1 = spin::bloch_vector(a);
    const spin::BlochVector a2 = spin::bloch_vector(b);
    result.slack = 2.0 - spin::coexist_value(a1, a2);
    result.feasible = spin::coexist_criterion(a1, a2);
    if (result.feasible) {
      const auto g = spin::joint_spin_observable(a1, a2);
      result.witness = assemble(e1, e2, g.effect(Label{1, 1}).op());
    }
    return result;
  }

  result.method = "grid";
  const QubitEffect qa = decompose(a);
  const QubitEffect qb = decompose(b);
  const auto slack_at = [&](const Eigen::Vector3d& g) {
    const Window w = window(qa, qb, g);
    return w.hi - w.lo;
  };
  // |g| <= g0 <= min(a0, b0) bounds the search box.
  const double r = std::max(0.0, std::min(qa.e0, qb.e0));
  const double step0 = 1e-2;
  const int n = static_cast<int>(std::floor(2.0 * r / step0)) + 1;
  Eigen::Vector3d best_g = Eigen::Vector3d::Zero();
  double best = slack_at(best_g);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d g(-r + step0 * i, -r + step0 * j, -r + step0 * k);
        const double s = slack_at(g);
        if (s > best) {
          best = s;
          best_g = g;
        }
      }
    }
  }
  // Local refinement of the concave slack.
  for (double step = step0; step >= 1e-4;) {
    bool improved = false;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const Eigen::Vector3d g = best_g + step * Eigen::Vector3d(dx, dy, dz);
          const double s = slack_at(g);
          if (s > best) {
            best = s;
            best_g = g;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  result.slack = best;
  result.feasible = best >= -1e-9;
  if (result.feasible) {
    const Window w = window(qa, qb, best_g);
    const double g0 = best >= 0.0 ? 0.5 * (w.lo + w.hi) : w.lo;
    result.witness = assemble(e1, e2, qubit_operator(g0, best_g));
  }
  return result;
}

bool joint_observable_feasible(const DiscreteObservable& e1, const DiscreteObservable& e2) {
  return joint_observable_search(e1, e2).feasible;
}

}  // namespace povmlab
