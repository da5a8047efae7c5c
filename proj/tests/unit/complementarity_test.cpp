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

#include <cmath>

#include "gtest/gtest.h"
#include "povmlab/error.hpp"
#include "povmlab/mzi.hpp"
#include "povmlab/random.hpp"
#include "povmlab/spin.hpp"
#include "test_util.hpp"

namespace povmlab {
namespace {

using spin::BlochVector;

Operator random_projection(std::size_t d, std::size_t rank, Rng& rng) {
  const Matrix u = random_unitary(d, rng).matrix();
  const Matrix v = u.leftCols(static_cast<Eigen::Index>(rank));
  return Operator(v * v.adjoint());
}

// dim(ran P cap ran Q) = rank P + rank Q - rank [P Q].
std::size_t intersection_dim(const Operator& p, const Operator& q) {
  Matrix stacked(p.matrix().rows(), 2 * p.matrix().cols());
  stacked << p.matrix(), q.matrix();
  return matrix_rank(p.matrix()) + matrix_rank(q.matrix()) - matrix_rank(stacked);
}

DiscreteObservable two_valued(const Operator& e) {
  return DiscreteObservable::from_operators({{1}, {0}}, {e, Operator::identity(e.dim()) - e});
}

void expect_valid_witness(const JointSearchResult& r, const DiscreteObservable& e1,
                          const DiscreteObservable& e2) {
  ASSERT_TRUE(r.witness.has_value());
  const auto& g = *r.witness;
  EXPECT_GE(testing::min_effect_eigenvalue(g), -1e-10);
  EXPECT_LT(testing::completeness_residual(g), 1e-9);
  const auto m0 = marginal(g, 0);
  const auto m1 = marginal(g, 1);
  EXPECT_LT(max_abs_diff(m0.effect(e1.outcomes()[0]).op(), e1.effect(0).op()), 1e-9);
  EXPECT_LT(max_abs_diff(m1.effect(e2.outcomes()[0]).op(), e2.effect(0).op()), 1e-9);
}

TEST(complementarity, eigenspace_one_cases) {
  EXPECT_LT(max_abs_diff(eigenspace_one(Operator::identity(3)), Operator::identity(3)), 1e-12);
  const Operator p = Operator::projector(basis_vector(3, 2));
  EXPECT_LT(max_abs(eigenspace_one(0.9 * p)), 1e-15);
  EXPECT_LT(max_abs_diff(eigenspace_one(p), p), 1e-12);
}

TEST(complementarity, meet_trivial_cases) {
  Rng rng(1);
  const Operator p = random_projection(4, 2, rng);
  EXPECT_LT(max_abs_diff(meet_projections(p, p), p), 1e-9);
  EXPECT_LT(max_abs(meet_projections(p, Operator::identity(4) - p)), 1e-9);
}

TEST(complementarity, meet_rejects_non_projection) {
  EXPECT_THROW(meet_projections(0.5 * Operator::identity(2), Operator::identity(2)),
               ValidationError);
}

TEST(complementarity, meet_of_random_rank_two_in_dim_three) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator p = random_projection(3, 2, rng);
    const Operator q = random_projection(3, 2, rng);
    const Operator m = meet_projections(p, q);
    EXPECT_TRUE(is_projection(m));
    EXPECT_EQ(matrix_rank(m.matrix()), intersection_dim(p, q));
    EXPECT_GE(matrix_rank(m.matrix()), 1u);
  }
}

TEST(complementarity, meet_is_greatest_lower_bound) {
  Rng rng(3);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      // Force a shared subspace half the time.
      const Matrix u = random_unitary(d, rng).matrix();
      const std::size_t shared = static_cast<std::size_t>(trial % 2);
      const Matrix base = u.leftCols(static_cast<Eigen::Index>(shared));
      const auto extend = [&](std::size_t extra) {
        Matrix w(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(shared + extra));
        w.leftCols(static_cast<Eigen::Index>(shared)) = base;
        // Random directions orthogonalised against the shared block.
        const Matrix r = random_unitary(d, rng).matrix();
        w.rightCols(static_cast<Eigen::Index>(extra)) = r.leftCols(static_cast<Eigen::Index>(extra));
        Eigen::HouseholderQR<Matrix> qr(w);
        const Matrix q = qr.householderQ() * Matrix::Identity(w.rows(), w.cols());
        return Operator(q * q.adjoint());
      };
      const std::size_t extra = (d - shared) / 2;
      const Operator p = extend(extra);
      const Operator q = extend(extra);
      const Operator m = meet_projections(p, q);
      // m <= p and m <= q: p m = m.
      EXPECT_LT(max_abs_diff(p * m, m), 1e-8);
      EXPECT_LT(max_abs_diff(q * m, m), 1e-8);
      EXPECT_EQ(matrix_rank(m.matrix()), intersection_dim(p, q)) << "d=" << d;
    }
  }
}

TEST(complementarity, path_and_interference_are_complementary) {
  const auto path = mzi::single_photon_observable(1.0, 0.0);
  const auto interference = mzi::single_photon_observable(0.5, 0.0);
  EXPECT_TRUE(are_complementary(path, interference));
  EXPECT_TRUE(are_prob_complementary(path, interference));
  EXPECT_FALSE(joint_observable_feasible(path, interference));
}

TEST(complementarity, observable_is_not_complementary_to_itself) {
  const auto path = mzi::single_photon_observable(1.0, 0.0);
  EXPECT_FALSE(are_complementary(path, path));
}

TEST(complementarity, commuting_sharp_observables_are_not_complementary) {
  Rng rng(4);
  const Matrix u = random_unitary(4, rng).matrix();
  const auto proj = [&](std::initializer_list<int> cols) {
    Matrix p = Matrix::Zero(4, 4);
    for (int c : cols) p += u.col(c) * u.col(c).adjoint();
    return Operator(p);
  };
  const auto a = two_valued(proj({0, 1}));
  const auto b = two_valued(proj({0, 2}));
  EXPECT_FALSE(are_complementary(a, b));
}

TEST(complementarity, complementary_requires_projection_valued) {
  const auto unsharp = spin::spin_observable({0.5, 0.0, 0.0});
  const auto sharp = spin::spin_observable({0.0, 1.0, 0.0});
  EXPECT_THROW(are_complementary(unsharp, sharp), ValidationError);
}

TEST(complementarity, unsharp_spin_pair_is_prob_complementary) {
  const auto a = spin::spin_observable({0.6, 0.0, 0.0});
  const auto b = spin::spin_observable({0.0, 0.6, 0.0});
  EXPECT_TRUE(are_prob_complementary(a, b));
  EXPECT_TRUE(joint_observable_feasible(a, b));
}

TEST(complementarity, trivial_observable_hits_the_guard) {
  const auto a = mzi::single_photon_observable(1.0, 0.0);
  const auto trivial = DiscreteObservable::from_operators({{0}, {1}}, {Operator::identity(2),
                                                                       Operator::zero(2)});
  EXPECT_FALSE(are_prob_complementary(a, trivial));
  EXPECT_FALSE(are_complementary(a, trivial));
}

TEST(complementarity, commuting_pair_is_jointly_measurable) {
  const Operator a = Operator::diagonal((RealVector(2) << 0.9, 0.2).finished());
  const Operator b = Operator::diagonal((RealVector(2) << 0.4, 0.7).finished());
  const auto e1 = two_valued(a), e2 = two_valued(b);
  const auto r = joint_observable_search(e1, e2);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.method, "commuting");
  expect_valid_witness(r, e1, e2);
}

TEST(complementarity, sharp_orthogonal_spins_are_not_jointly_measurable) {
  const auto r = joint_observable_search(spin::spin_observable({1.0, 0.0, 0.0}),
                                         spin::spin_observable({0.0, 1.0, 0.0}));
  EXPECT_FALSE(r.feasible);
}

TEST(complementarity, spin_form_uses_the_exact_criterion) {
  const auto e1 = spin::spin_observable({0.6, 0.0, 0.0});
  const auto e2 = spin::spin_observable({0.0, 0.6, 0.0});
  const auto r = joint_observable_search(e1, e2);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.method, "spin");
  expect_valid_witness(r, e1, e2);
}

TEST(complementarity, grid_search_on_general_qubit_effects) {
  // A scaled sharp effect against a sharp noncommuting one: a sharp member
  // only coexists with effects commuting with it.
  const Operator px = spin::spin_effect({1.0, 0.0, 0.0}).op();
  const auto e1 = two_valued(0.5 * px);
  const auto e2 = spin::spin_observable({0.0, 1.0, 0.0});
  const auto r = joint_observable_search(e1, e2);
  EXPECT_EQ(r.method, "grid");
  EXPECT_FALSE(r.feasible);

  // Heavily scaled effects always coexist: G = A B-ish product bound.
  const auto f1 = two_valued(0.3 * px);
  const auto f2 = two_valued(0.3 * spin::spin_effect({0.0, 1.0, 0.0}).op());
  const auto s = joint_observable_search(f1, f2);
  EXPECT_TRUE(s.feasible);
  expect_valid_witness(s, f1, f2);
}

TEST(complementarity, grid_witnesses_are_valid_on_random_effects) {
  Rng rng(5);
  int feasible = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const auto e1 = two_valued(random_effect_operator(2, rng));
    const auto e2 = two_valued(random_effect_operator(2, rng));
    const auto r = joint_observable_search(e1, e2);
    if (r.feasible) {
      ++feasible;
      expect_valid_witness(r, e1, e2);
    }
  }
  EXPECT_GT(feasible, 0);
}

TEST(complementarity, complementary_implies_not_jointly_measurable) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = two_valued(Operator::projector(haar_random_vector(2, rng)));
    const auto q = two_valued(Operator::projector(haar_random_vector(2, rng)));
    if (are_complementary(p, q)) {
      EXPECT_FALSE(joint_observable_feasible(p, q));
    }
  }
}

TEST(complementarity, joint_search_rejects_larger_dimensions) {
  const auto a = two_valued(Operator::projector(basis_vector(3, 0)));
  EXPECT_THROW(joint_observable_search(a, a), DimensionError);
}

TEST(complementarity, joint_observable_of_prob_complementary_pair_is_not_repeatable) {
  // Coexistent and probabilistically complementary: no repeatable joint
  // measurement exists, so the Lueders instrument of the joint fails.
  for (double r : {0.3, 0.6, 0.7}) {
    const BlochVector a1{r, 0.0, 0.0}, a2{0.0, r, 0.0};
    ASSERT_TRUE(are_prob_complementary(spin::spin_observable(a1), spin::spin_observable(a2)));
    const auto g = spin::joint_spin_observable(a1, a2);
    EXPECT_FALSE(is_repeatable(luders_transformer(g))) << r;
  }
}

}  // namespace
}  // namespace povmlab
