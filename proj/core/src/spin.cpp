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

#include "povmlab/spin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "povmlab/error.hpp"

namespace povmlab::spin {
namespace {

constexpr double kCriterionSlack = 1e-12;
constexpr double kOracleSlack = 1e-12;

Operator from_rows(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return Operator(std::move(m));
}

Operator dot_sigma(const BlochVector& a) {
  return Operator(a.x() * pauli_x().matrix() + a.y() * pauli_y().matrix() +
                  a.z() * pauli_z().matrix());
}

// The four ball constraints in the plane spanned by a1 and a2. Every centre
// lies in that plane, so projecting a candidate point onto it never
// increases a distance and the search can stay two-dimensional.
struct BallProblem {
  Eigen::Vector2d a1;
  Eigen::Vector2d a2;

  double violation(double gamma, const Eigen::Vector2d& p) const {
    gamma = std::clamp(gamma, 0.0, 1.0);
    const double v0 = p.norm() - gamma;
    const double v1 = (a1 - p).norm() - (1.0 - gamma);
    const double v2 = (a2 - p).norm() - (1.0 - gamma);
    const double v3 = (a1 + a2 - p).norm() - gamma;
    return std::max({v0, v1, v2, v3});
  }
};

BallProblem planar(const BlochVector& a1, const BlochVector& a2) {
  BlochVector e1(1.0, 0.0, 0.0);
  if (a1.norm() > 1e-15) {
    e1 = a1.normalized();
  } else if (a2.norm() > 1e-15) {
    e1 = a2.normalized();
  }
  BlochVector e2 = a2 - a2.dot(e1) * e1;
  if (e2.norm() > 1e-15) {
    e2.normalize();
  } else {
    // Any unit vector orthogonal to e1.
    const BlochVector trial = std::abs(e1.x()) < 0.9 ? BlochVector(1, 0, 0) : BlochVector(0, 1, 0);
    e2 = (trial - trial.dot(e1) * e1).normalized();
  }
  return {Eigen::Vector2d(a1.dot(e1), a1.dot(e2)), Eigen::Vector2d(a2.dot(e1), a2.dot(e2))};
}

}  // namespace

Operator pauli_x() { return from_rows(0.0, 1.0, 1.0, 0.0); }
Operator pauli_y() { return from_rows(0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0); }
Operator pauli_z() { return from_rows(1.0, 0.0, 0.0, -1.0); }

Effect spin_effect(const BlochVector& a) {
  if (!a.allFinite() || a.norm() > 1.0 + kCriterionSlack) {
    throw ValidationError("spin_effect: |a| = " + std::to_string(a.norm()) + " > 1");
  }
  return Effect(0.5 * (Operator::identity(2) + dot_sigma(a)));
}

DiscreteObservable spin_observable(const BlochVector& a) {
  return DiscreteObservable({{1}, {-1}}, {spin_effect(a), spin_effect(-a)});
}

BlochVector bloch_vector(const Operator& e) {
  if (e.dim() != 2) throw DimensionError("bloch_vector: operator is not 2x2");
  return BlochVector((e * pauli_x()).trace().real(), (e * pauli_y()).trace().real(),
                     (e * pauli_z()).trace().real());
}

double coexist_value(const BlochVector& a1, const BlochVector& a2) {
  return (a1 + a2).norm() + (a1 - a2).norm();
}

bool coexist_criterion(const BlochVector& a1, const BlochVector& a2) {
  return coexist_value(a1, a2) <= 2.0 + kCriterionSlack;
}

double ball_violation_minimum(const BlochVector& a1, const BlochVector& a2) {
  const BallProblem prob = planar(a1, a2);

  // Coarse grid over gamma and the point (|p| <= gamma <= 1).
  double best_gamma = 0.0;
  Eigen::Vector2d best_p(0.0, 0.0);
  double best = prob.violation(best_gamma, best_p);
  for (int ig = 0; ig <= 20; ++ig) {
    const double gamma = 0.05 * ig;
    for (int ix = -10; ix <= 10; ++ix) {
      for (int iy = -10; iy <= 10; ++iy) {
        const Eigen::Vector2d p(0.1 * ix, 0.1 * iy);
        const double v = prob.violation(gamma, p);
        if (v < best) {
          best = v;
          best_gamma = gamma;
          best_p = p;
        }
      }
    }
  }

  // Pattern search over all 26 neighbour directions; the objective is a
  // convex max of cone functions, so the diagonal moves matter at kinks.
  double step = 0.05;
  while (step > 1e-14) {
    bool improved = false;
    for (int dg = -1; dg <= 1; ++dg) {
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dg == 0 && dx == 0 && dy == 0) continue;
          const double gamma = std::clamp(best_gamma + step * dg, 0.0, 1.0);
          const Eigen::Vector2d p = best_p + step * Eigen::Vector2d(dx, dy);
          const double v = prob.violation(gamma, p);
          if (v < best) {
            best = v;
            best_gamma = gamma;
            best_p = p;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

bool coexist_oracle(const BlochVector& a1, const BlochVector& a2) {
  const BallProblem prob = planar(a1, a2);
  const Eigen::Vector2d c0 = 0.5 * (prob.a1 + prob.a2);
  if (prob.violation(c0.norm(), c0) <= kOracleSlack) return true;
  return ball_violation_minimum(a1, a2) <= kOracleSlack;
}

DiscreteObservable joint_spin_observable(const BlochVector& a1, const BlochVector& a2) {
  // Validates both vectors.
  spin_effect(a1);
  spin_effect(a2);
  if (!coexist_criterion(a1, a2)) {
    throw ValidationError("joint_spin_observable: |a1+a2| + |a1-a2| = " +
                          std::to_string(coexist_value(a1, a2)) + " > 2");
  }
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (int si : {1, -1}) {
    for (int sk : {1, -1}) {
      const BlochVector ai = static_cast<double>(si) * a1;
      const BlochVector ak = static_cast<double>(sk) * a2;
      const double alpha = 0.5 * (1.0 + ai.dot(ak));
      labels.push_back({si, sk});
      effects.push_back(0.5 * (alpha * Operator::identity(2) + 0.5 * dot_sigma(ai + ak)));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

}  // namespace povmlab::spin
