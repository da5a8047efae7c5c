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

#include "povmlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "povmlab/error.hpp"
#include "povmlab/random.hpp"

namespace povmlab {
namespace {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// tr[A B] without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

double snap_probability(double p) {
  if (p < 0.0 && p >= -tol::kPositivity) return 0.0;
  if (p > 1.0 && p <= 1.0 + tol::kPositivity) return 1.0;
  return p;
}

struct Grouping {
  std::vector<Label> labels;
  std::vector<std::size_t> group_of;  // pointer outcome index -> group index
};

Grouping group_outcomes(const std::vector<Label>& outcomes,
                        const std::function<Label(const Label&)>& f) {
  Grouping g;
  std::map<Label, std::size_t> seen;
  for (const auto& label : outcomes) {
    Label image = f ? f(label) : label;
    auto [it, inserted] = seen.emplace(image, g.labels.size());
    if (inserted) g.labels.push_back(std::move(image));
    g.group_of.push_back(it->second);
  }
  return g;
}

std::size_t probe_dim(const MeasurementScheme& s) { return s.probe_state.dim(); }

// Applies the pointer effect z to the columns of w (a vector-valued map
// into system (x) probe).
Matrix apply_pointer(const MeasurementScheme& s, const Matrix& z, const Matrix& w) {
  if (s.support == PointerSupport::kJoint) return z * w;
  const auto dp = static_cast<Eigen::Index>(probe_dim(s));
  Matrix out(w.rows(), w.cols());
  for (Eigen::Index r = 0; r < w.rows() / dp; ++r) {
    out.middleRows(r * dp, dp).noalias() = z * w.middleRows(r * dp, dp);
  }
  return out;
}

// Columns U (e_s (x) phi) for every system basis index s.
Matrix dilate(const MeasurementScheme& s, const Vector& phi) {
  const auto ds = static_cast<Eigen::Index>(s.system_dim);
  const auto dp = static_cast<Eigen::Index>(probe_dim(s));
  Matrix x = Matrix::Zero(ds * dp, ds);
  for (Eigen::Index k = 0; k < ds; ++k) x.block(k * dp, k, dp, 1) = phi;
  return s.coupling.matrix() * x;
}

}  // namespace

std::string to_string(const Label& label) {
  if (label.size() == 1) return std::to_string(label.front());
  std::string out = "(";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(label[i]);
  }
  return out + ")";
}

// --- Effect / State ------------------------------------------------------

Effect::Effect(Operator op) {
  if (op.dim() == 0) throw DimensionError("Effect: empty operator");
  if (!is_hermitian(op)) {
    throw ValidationError("Effect: not Hermitian (defect " +
                          std::to_string(hermiticity_defect(op)) + ")");
  }
  const auto eig = eigh(op);
  if (eig.values.minCoeff() < -tol::kPositivity ||
      eig.values.maxCoeff() > 1.0 + tol::kPositivity) {
    throw ValidationError("Effect: spectrum [" + std::to_string(eig.values.minCoeff()) +
                          ", " + std::to_string(eig.values.maxCoeff()) +
                          "] outside [0,1]");
  }
  op_ = Operator(hermitian_part(op.matrix()), op.dims());
}

State::State(Operator op) {
  if (op.dim() == 0) throw DimensionError("State: empty operator");
  if (!is_hermitian(op)) throw ValidationError("State: not Hermitian");
  if (std::abs(op.trace() - 1.0) > tol::kPositivity) {
    throw ValidationError("State: trace " + std::to_string(op.trace().real()) + " != 1");
  }
  if (min_eigenvalue(op) < -tol::kPositivity) throw ValidationError("State: not positive");
  op_ = Operator(hermitian_part(op.matrix()), op.dims());
}

State State::pure(const Vector& v) {
  if (!is_unit(v)) {
    throw ValidationError("State::pure: vector norm " + std::to_string(v.norm()) + " != 1");
  }
  return State(Operator::projector(v));
}

State State::maximally_mixed(std::size_t dim) {
  return State(Operator::identity(dim) * (1.0 / static_cast<double>(dim)));
}

double probability(const State& state, const Operator& effect) {
  if (state.dim() != effect.dim()) {
    throw DimensionError("probability: state dim " + std::to_string(state.dim()) +
                         " vs effect dim " + std::to_string(effect.dim()));
  }
  return snap_probability(trace_product(state.op().matrix(), effect.matrix()).real());
}

double probability(const State& state, const Effect& effect) {
  return probability(state, effect.op());
}

// --- DiscreteObservable ---------------------------------------------------

DiscreteObservable::DiscreteObservable(std::vector<Label> outcomes,
                                       std::vector<Effect> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (effects_.empty()) throw ValidationError("DiscreteObservable: no outcomes");
  if (outcomes_.size() != effects_.size()) {
    throw ValidationError("DiscreteObservable: label/effect count mismatch");
  }
  const std::size_t d = effects_.front().dim();
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& e : effects_) {
    if (e.dim() != d) throw DimensionError("DiscreteObservable: effects differ in dimension");
    total += e.op().matrix();
  }
  std::vector<Label> sorted = outcomes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("DiscreteObservable: duplicate outcome label");
  }
  const double defect = max_abs_diff(Operator(total), Operator::identity(d));
  if (defect > tol::kCompleteness) {
    throw ValidationError("DiscreteObservable: effects sum to I only within " +
                          std::to_string(defect));
  }
}

DiscreteObservable DiscreteObservable::from_operators(std::vector<Label> outcomes,
                                                      std::vector<Operator> effects) {
  std::vector<Effect> checked;
  checked.reserve(effects.size());
  for (auto& op : effects) checked.emplace_back(std::move(op));
  return DiscreteObservable(std::move(outcomes), std::move(checked));
}

std::optional<std::size_t> DiscreteObservable::index_of(const Label& label) const {
  const auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
  if (it == outcomes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes_.begin());
}

const Effect& DiscreteObservable::effect(const Label& label) const {
  const auto idx = index_of(label);
  if (!idx) throw ValidationError("DiscreteObservable: unknown outcome " + to_string(label));
  return effects_[*idx];
}

Operator DiscreteObservable::sum_over(std::span<const std::size_t> indices) const {
  Operator out = Operator::zero(dim());
  for (std::size_t i : indices) out += effects_.at(i).op();
  return out;
}

Operator DiscreteObservable::sum_over_mask(unsigned long long mask) const {
  if (size() > 63) throw ValidationError("sum_over_mask: too many outcomes");
  Operator out = Operator::zero(dim());
  for (std::size_t i = 0; i < size(); ++i) {
    if (mask & (1ULL << i)) out += effects_[i].op();
  }
  return out;
}

std::vector<double> DiscreteObservable::probabilities(const State& state) const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& e : effects_) out.push_back(probability(state, e));
  return out;
}

bool DiscreteObservable::is_projection_valued(double tolerance) const {
  return std::all_of(effects_.begin(), effects_.end(), [&](const Effect& e) {
    return is_projection(e.op(), tolerance);
  });
}

DiscreteObservable coarse_grain(const DiscreteObservable& obs,
                                const std::function<Label(const Label&)>& f) {
  const Grouping g = group_outcomes(obs.outcomes(), f);
  std::vector<Operator> sums(g.labels.size(), Operator::zero(obs.dim()));
  for (std::size_t i = 0; i < obs.size(); ++i) sums[g.group_of[i]] += obs.effect(i).op();
  return DiscreteObservable::from_operators(g.labels, std::move(sums));
}

DiscreteObservable marginal(const DiscreteObservable& obs, std::size_t axis) {
  const std::size_t arity = obs.outcomes().front().size();
  for (const auto& label : obs.outcomes()) {
    if (label.size() != arity || arity < 2) {
      throw ValidationError("marginal: labels are not tuples of equal arity");
    }
  }
  if (axis >= arity) throw ValidationError("marginal: axis out of range");
  return coarse_grain(obs, [axis](const Label& l) { return Label{l[axis]}; });
}

DiscreteObservable product(const DiscreteObservable& a, const DiscreteObservable& b) {
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Label l = a.outcomes()[i];
      l.insert(l.end(), b.outcomes()[j].begin(), b.outcomes()[j].end());
      labels.push_back(std::move(l));
      effects.push_back(tensor(a.effect(i).op(), b.effect(j).op()));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

DiscreteObservable compress(const DiscreteObservable& obs, const Matrix& isometry) {
  if (static_cast<std::size_t>(isometry.rows()) != obs.dim()) {
    throw DimensionError("compress: isometry rows do not match observable dimension");
  }
  const Matrix gram = isometry.adjoint() * isometry;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("compress: columns are not orthonormal");
  }
  std::vector<Operator> effects;
  for (const auto& e : obs.effects()) {
    effects.emplace_back(hermitian_part(isometry.adjoint() * e.op().matrix() * isometry));
  }
  return DiscreteObservable::from_operators(obs.outcomes(), std::move(effects));
}

// --- StateTransformer -----------------------------------------------------

StateTransformer::StateTransformer(std::vector<Label> outcomes,
                                   std::vector<std::vector<Operator>> kraus_sets)
    : outcomes_(std::move(outcomes)), kraus_(std::move(kraus_sets)) {
  if (outcomes_.empty() || outcomes_.size() != kraus_.size()) {
    throw ValidationError("StateTransformer: label/Kraus-set count mismatch");
  }
  for (const auto& set : kraus_) {
    for (const auto& m : set) {
      if (dim_ == 0) dim_ = m.dim();
      if (m.dim() != dim_) throw DimensionError("StateTransformer: Kraus dims differ");
    }
  }
  if (dim_ == 0) throw ValidationError("StateTransformer: no operation elements");
  Operator total = Operator::zero(dim_);
  for (std::size_t i = 0; i < size(); ++i) total += effect_operator(i);
  if (max_eigenvalue(Operator(hermitian_part(total.matrix()))) > 1.0 + tol::kCompleteness) {
    throw ValidationError("StateTransformer: sum of M^dag M exceeds the identity");
  }
}

Operator StateTransformer::apply(std::size_t index, const Operator& state) const {
  if (state.dim() != dim_) throw DimensionError("StateTransformer::apply: dim mismatch");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& m : kraus_.at(index)) {
    out.noalias() += m.matrix() * state.matrix() * m.matrix().adjoint();
  }
  return Operator(std::move(out));
}

Operator StateTransformer::apply(std::span<const std::size_t> indices,
                                 const Operator& state) const {
  Operator out = Operator::zero(dim_);
  for (std::size_t i : indices) out += apply(i, state);
  return out;
}

Operator StateTransformer::apply_all(const Operator& state) const {
  Operator out = Operator::zero(dim_);
  for (std::size_t i = 0; i < size(); ++i) out += apply(i, state);
  return out;
}

Operator StateTransformer::effect_operator(std::size_t index) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& m : kraus_.at(index)) out.noalias() += m.matrix().adjoint() * m.matrix();
  return Operator(std::move(out));
}

bool StateTransformer::is_complete(double tolerance) const {
  Operator total = Operator::zero(dim_);
  for (std::size_t i = 0; i < size(); ++i) total += effect_operator(i);
  return max_abs_diff(total, Operator::identity(dim_)) <= tolerance;
}

DiscreteObservable StateTransformer::observable() const {
  if (!is_complete()) throw ValidationError("StateTransformer: not trace preserving");
  std::vector<Operator> effects;
  for (std::size_t i = 0; i < size(); ++i) {
    effects.emplace_back(hermitian_part(effect_operator(i).matrix()));
  }
  return DiscreteObservable::from_operators(outcomes_, std::move(effects));
}

Operator apply_transformer(const StateTransformer& transformer,
                           const std::vector<Label>& outcome_set, const State& state) {
  std::vector<std::size_t> indices;
  const auto& labels = transformer.outcomes();
  for (const auto& label : outcome_set) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw ValidationError("apply_transformer: unknown outcome " + to_string(label));
    }
    indices.push_back(static_cast<std::size_t>(it - labels.begin()));
  }
  return transformer.apply(indices, state.op());
}

StateTransformer luders_transformer(const DiscreteObservable& obs) {
  std::vector<std::vector<Operator>> kraus;
  for (const auto& e : obs.effects()) kraus.push_back({sqrt_psd(e.op())});
  return StateTransformer(obs.outcomes(), std::move(kraus));
}

std::vector<State> state_sample(std::size_t dim, unsigned long long seed,
                                std::size_t random_count) {
  std::vector<State> sample;
  for (std::size_t k = 0; k < dim; ++k) sample.push_back(State::pure(basis_vector(dim, k)));
  Rng rng(seed);
  for (std::size_t k = 0; k < random_count; ++k) {
    sample.push_back(State::pure(haar_random_vector(dim, rng)));
  }
  return sample;
}

bool is_repeatable(const StateTransformer& transformer, std::span<const State> sample,
                   double tolerance) {
  for (std::size_t x = 0; x < transformer.size(); ++x) {
    for (const auto& t : sample) {
      const Operator once = transformer.apply(x, t.op());
      const Operator twice = transformer.apply(x, once);
      if (std::abs(once.trace().real() - twice.trace().real()) > tolerance) return false;
    }
  }
  return true;
}

bool is_repeatable(const StateTransformer& transformer, double tolerance) {
  const auto sample = state_sample(transformer.dim());
  return is_repeatable(transformer, sample, tolerance);
}

bool is_first_kind(const StateTransformer& transformer, const DiscreteObservable& obs,
                   std::span<const State> sample, double tolerance) {
  if (obs.dim() != transformer.dim()) throw DimensionError("is_first_kind: dim mismatch");
  for (const auto& t : sample) {
    const Operator after = transformer.apply_all(t.op());
    for (const auto& e : obs.effects()) {
      const double before = trace_product(t.op().matrix(), e.op().matrix()).real();
      const double later = trace_product(after.matrix(), e.op().matrix()).real();
      if (std::abs(before - later) > tolerance) return false;
    }
  }
  return true;
}

bool is_first_kind(const StateTransformer& transformer, const DiscreteObservable& obs,
                   double tolerance) {
  const auto sample = state_sample(transformer.dim());
  return is_first_kind(transformer, obs, sample, tolerance);
}

// --- Measurement schemes ---------------------------------------------------

void validate(const MeasurementScheme& scheme) {
  const std::size_t ds = scheme.system_dim;
  const std::size_t dp = probe_dim(scheme);
  if (ds == 0) throw DimensionError("MeasurementScheme: system_dim is zero");
  if (scheme.coupling.dim() != ds * dp) {
    throw DimensionError("MeasurementScheme: coupling dim " +
                         std::to_string(scheme.coupling.dim()) + " != system " +
                         std::to_string(ds) + " x probe " + std::to_string(dp));
  }
  const std::size_t want = scheme.support == PointerSupport::kProbe ? dp : ds * dp;
  if (scheme.pointer.dim() != want) {
    throw DimensionError("MeasurementScheme: pointer acts on dim " +
                         std::to_string(scheme.pointer.dim()) + ", expected " +
                         std::to_string(want));
  }
  if (!is_unitary(scheme.coupling)) throw ValidationError("MeasurementScheme: coupling not unitary");
}

DiscreteObservable induced_observable(const MeasurementScheme& scheme) {
  validate(scheme);
  const Grouping g = group_outcomes(scheme.pointer.outcomes(), scheme.pointer_function);
  const auto ds = static_cast<Eigen::Index>(scheme.system_dim);
  std::vector<Matrix> sums(g.labels.size(), Matrix::Zero(ds, ds));

  // T' = sum_k p_k |phi_k><phi_k|, so F(x) = sum_k p_k W_k^dag Z(x) W_k with
  // W_k = U (I (x) |phi_k>).
  const auto eig = eigh(scheme.probe_state.op());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double p = eig.values(k);
    if (p <= 1e-15) continue;
    const Matrix w = dilate(scheme, eig.vectors.col(k));
    for (std::size_t j = 0; j < scheme.pointer.size(); ++j) {
      const Matrix zw = apply_pointer(scheme, scheme.pointer.effect(j).op().matrix(), w);
      sums[g.group_of[j]].noalias() += p * (w.adjoint() * zw);
    }
  }
  std::vector<Operator> effects;
  for (auto& m : sums) effects.emplace_back(hermitian_part(m));
  return DiscreteObservable::from_operators(g.labels, std::move(effects));
}

StateTransformer scheme_transformer(const MeasurementScheme& scheme) {
  validate(scheme);
  if (scheme.support != PointerSupport::kProbe) {
    throw ValidationError("scheme_transformer: pointer must act on the probe only");
  }
  const Grouping g = group_outcomes(scheme.pointer.outcomes(), scheme.pointer_function);
  const auto ds = static_cast<Eigen::Index>(scheme.system_dim);
  const auto dp = static_cast<Eigen::Index>(probe_dim(scheme));
  std::vector<std::vector<Operator>> kraus(g.labels.size());

  const auto eig = eigh(scheme.probe_state.op());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double p = eig.values(k);
    if (p <= 1e-15) continue;
    const Matrix w = dilate(scheme, eig.vectors.col(k));
    for (std::size_t j = 0; j < scheme.pointer.size(); ++j) {
      const Matrix root = sqrt_psd(scheme.pointer.effect(j).op()).matrix();
      for (Eigen::Index l = 0; l < dp; ++l) {
        Matrix m(ds, ds);
        for (Eigen::Index r = 0; r < ds; ++r) {
          m.row(r) = std::sqrt(p) * (root.row(l) * w.middleRows(r * dp, dp));
        }
        if (m.cwiseAbs().maxCoeff() > 1e-15) kraus[g.group_of[j]].emplace_back(std::move(m));
      }
    }
  }
  for (auto& set : kraus) {
    if (set.empty()) set.push_back(Operator::zero(scheme.system_dim));
  }
  return StateTransformer(g.labels, std::move(kraus));
}

std::vector<double> pointer_probabilities(const MeasurementScheme& scheme,
                                          const State& system_state) {
  validate(scheme);
  if (system_state.dim() != scheme.system_dim) {
    throw DimensionError("pointer_probabilities: state dim mismatch");
  }
  const Grouping g = group_outcomes(scheme.pointer.outcomes(), scheme.pointer_function);
  const Matrix& u = scheme.coupling.matrix();
  const Matrix joint =
      u * tensor(system_state.op(), scheme.probe_state.op()).matrix() * u.adjoint();
  std::vector<double> out(g.labels.size(), 0.0);
  for (std::size_t j = 0; j < scheme.pointer.size(); ++j) {
    Matrix z = scheme.pointer.effect(j).op().matrix();
    if (scheme.support == PointerSupport::kProbe) {
      z = tensor(Operator::identity(scheme.system_dim), Operator(z)).matrix();
    }
    out[g.group_of[j]] += trace_product(joint, z).real();
  }
  return out;
}

}  // namespace povmlab
