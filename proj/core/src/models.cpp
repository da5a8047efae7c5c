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

#include "povmlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>

#include "povmlab/error.hpp"

namespace povmlab::models {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Label> site_labels(std::size_t d) {
  std::vector<Label> out;
  for (std::size_t q = 0; q < d; ++q) out.push_back({static_cast<int>(q)});
  return out;
}

}  // namespace

CyclicGrid::CyclicGrid(std::size_t d) : d_(d) {
  if (d == 0) throw DimensionError("CyclicGrid: need at least one site");
  if (d > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw DimensionError("CyclicGrid: too many sites");
  }
}

std::size_t CyclicGrid::wrap(long long site) const {
  const auto d = static_cast<long long>(d_);
  long long r = site % d;
  if (r < 0) r += d;
  return static_cast<std::size_t>(r);
}

Matrix CyclicGrid::dft() const {
  const auto n = static_cast<Eigen::Index>(d_);
  Matrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d_));
  for (Eigen::Index q = 0; q < n; ++q) {
    for (Eigen::Index p = 0; p < n; ++p) {
      // Reduce pq mod d first so the phase stays accurate for large d.
      const auto k = static_cast<double>((p * q) % n);
      f(q, p) = std::polar(norm, kTwoPi * k / static_cast<double>(d_));
    }
  }
  return f;
}

Vector CyclicGrid::momentum_vector(std::size_t p) const {
  if (p >= d_) throw DimensionError("momentum_vector: index out of range");
  return dft().col(static_cast<Eigen::Index>(p));
}

Operator CyclicGrid::shift(long long steps) const {
  const auto n = static_cast<Eigen::Index>(d_);
  Matrix x = Matrix::Zero(n, n);
  for (std::size_t q = 0; q < d_; ++q) {
    x(static_cast<Eigen::Index>(wrap(static_cast<long long>(q) + steps)),
      static_cast<Eigen::Index>(q)) = 1.0;
  }
  return Operator(std::move(x));
}

Operator CyclicGrid::boost(long long steps) const {
  Vector diag(static_cast<Eigen::Index>(d_));
  for (std::size_t q = 0; q < d_; ++q) {
    const std::size_t k = wrap(static_cast<long long>(q) * wrap(steps));
    diag(static_cast<Eigen::Index>(q)) =
        std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(d_));
  }
  return Operator(diag.asDiagonal().toDenseMatrix());
}

DiscreteObservable CyclicGrid::position_observable() const {
  std::vector<Operator> effects;
  for (std::size_t q = 0; q < d_; ++q) effects.push_back(Operator::projector(position_vector(q)));
  return DiscreteObservable::from_operators(site_labels(d_), std::move(effects));
}

DiscreteObservable CyclicGrid::momentum_observable() const {
  const Matrix f = dft();
  std::vector<Operator> effects;
  for (Eigen::Index p = 0; p < f.cols(); ++p) effects.push_back(Operator::projector(f.col(p)));
  return DiscreteObservable::from_operators(site_labels(d_), std::move(effects));
}

ConfidenceFunction::ConfidenceFunction(RealVector weights) : w_(std::move(weights)) {
  if (w_.size() == 0) throw DimensionError("ConfidenceFunction: empty");
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!(w_(i) >= 0.0) || !std::isfinite(w_(i))) {
      throw ValidationError("ConfidenceFunction: weights must be finite and nonnegative");
    }
  }
  if (std::abs(w_.sum() - 1.0) > 1e-12) {
    throw ValidationError("ConfidenceFunction: weights sum to " + std::to_string(w_.sum()));
  }
}

ConfidenceFunction ConfidenceFunction::from_amplitudes(const Vector& phi) {
  const Eigen::Index d = phi.size();
  RealVector w(d);
  for (Eigen::Index j = 0; j < d; ++j) w(j) = std::norm(phi((d - j) % d));
  return ConfidenceFunction(std::move(w));
}

MeasurementScheme toy_discrete_measurement(const Operator& a, const CyclicGrid& probe,
                                           std::size_t pointer_width) {
  if (!is_hermitian(a)) throw ValidationError("toy_discrete_measurement: A is not Hermitian");
  const auto eig = eigh(a);
  // Group eigenvectors by their (integer) eigenvalue.
  std::map<long long, std::vector<Eigen::Index>> spaces;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double v = eig.values(k);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
      throw ValidationError("toy_discrete_measurement: eigenvalue " + std::to_string(v) +
                            " is not an integer");
    }
    spaces[static_cast<long long>(r)].push_back(k);
  }
  const std::size_t d = probe.size();
  const std::size_t window = 2 * pointer_width + 1;
  if (window * spaces.size() > d) {
    throw ValidationError("toy_discrete_measurement: pointer windows overlap");
  }
  // owner[s] = eigenvalue whose window contains site s.
  std::vector<std::optional<long long>> owner(d);
  for (const auto& [value, idx] : spaces) {
    const auto w = static_cast<long long>(pointer_width);
    for (long long j = -w; j <= w; ++j) {
      auto& slot = owner[probe.wrap(value + j)];
      if (slot && *slot != value) {
        throw ValidationError("toy_discrete_measurement: pointer windows overlap");
      }
      slot = value;
    }
  }

  const std::size_t ds = a.dim();
  const auto big = static_cast<Eigen::Index>(ds * d);
  Matrix u = Matrix::Zero(big, big);
  for (const auto& [value, idx] : spaces) {
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(ds));
    for (Eigen::Index k : idx) p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    u += tensor(Operator(p), probe.shift(value)).matrix();
  }

  Vector phi = Vector::Zero(static_cast<Eigen::Index>(d));
  const auto w = static_cast<long long>(pointer_width);
  for (long long j = -w; j <= w; ++j) phi(static_cast<Eigen::Index>(probe.wrap(j))) = 1.0;
  phi.normalize();

  const long long fallback = spaces.begin()->first;
  MeasurementScheme s;
  s.system_dim = ds;
  s.coupling = Operator(std::move(u), {ds, d});
  s.probe_state = State::pure(phi);
  s.pointer = probe.position_observable();
  // Sites outside every window never fire; they join the first group so the
  // outcome set is exactly the spectrum.
  s.pointer_function = [owner, fallback](const Label& site) -> Label {
    const auto& o = owner.at(static_cast<std::size_t>(site.at(0)));
    return {static_cast<int>(o ? *o : fallback)};
  };
  s.support = PointerSupport::kProbe;
  return s;
}

DiscreteObservable unsharp_position_observable(const ConfidenceFunction& f,
                                               const CyclicGrid& grid) {
  const std::size_t d = grid.size();
  if (f.size() != d) throw DimensionError("unsharp_position_observable: f has wrong size");
  std::vector<Operator> effects;
  for (std::size_t x = 0; x < d; ++x) {
    RealVector diag(static_cast<Eigen::Index>(d));
    for (std::size_t q = 0; q < d; ++q) {
      diag(static_cast<Eigen::Index>(q)) =
          f(grid.wrap(static_cast<long long>(q) - static_cast<long long>(x)));
    }
    effects.push_back(Operator::diagonal(diag));
  }
  return DiscreteObservable::from_operators(site_labels(d), std::move(effects));
}

MeasurementScheme shift_scheme(const Vector& phi, const CyclicGrid& grid) {
  const std::size_t d = grid.size();
  if (static_cast<std::size_t>(phi.size()) != d) {
    throw DimensionError("shift_scheme: pointer state has wrong size");
  }
  if (!is_unit(phi)) throw ValidationError("shift_scheme: pointer state is not normalised");
  const auto big = static_cast<Eigen::Index>(d * d);
  Matrix u = Matrix::Zero(big, big);
  for (std::size_t q = 0; q < d; ++q) {
    const Operator pq = Operator::projector(grid.position_vector(q));
    u += tensor(pq, grid.shift(static_cast<long long>(q))).matrix();
  }
  MeasurementScheme s;
  s.system_dim = d;
  s.coupling = Operator(std::move(u), {d, d});
  s.probe_state = State::pure(phi);
  s.pointer = grid.position_observable();
  s.support = PointerSupport::kProbe;
  return s;
}

StateTransformer unsharp_position_transformer(const Vector& phi, const CyclicGrid& grid) {
  const std::size_t d = grid.size();
  if (static_cast<std::size_t>(phi.size()) != d) {
    throw DimensionError("unsharp_position_transformer: profile has wrong size");
  }
  if (std::abs(phi.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("unsharp_position_transformer: sum |phi|^2 = " +
                          std::to_string(phi.squaredNorm()));
  }
  std::vector<std::vector<Operator>> kraus;
  for (std::size_t x = 0; x < d; ++x) {
    Vector diag(static_cast<Eigen::Index>(d));
    for (std::size_t q = 0; q < d; ++q) {
      diag(static_cast<Eigen::Index>(q)) = phi(static_cast<Eigen::Index>(
          grid.wrap(static_cast<long long>(x) - static_cast<long long>(q))));
    }
    kraus.push_back({Operator(diag.asDiagonal().toDenseMatrix())});
  }
  return StateTransformer(site_labels(d), std::move(kraus));
}

DiscreteObservable phase_space_observable(const State& t0, const CyclicGrid& grid) {
  const std::size_t d = grid.size();
  if (t0.dim() != d) throw DimensionError("phase_space_observable: state has wrong size");
  std::vector<Label> labels;
  std::vector<Operator> effects;
  const double scale = 1.0 / static_cast<double>(d);
  for (std::size_t q = 0; q < d; ++q) {
    const Operator x = grid.shift(static_cast<long long>(q));
    for (std::size_t p = 0; p < d; ++p) {
      const Operator w = x * grid.boost(static_cast<long long>(p));
      labels.push_back({static_cast<int>(q), static_cast<int>(p)});
      effects.push_back(scale * (w * t0.op() * w.adjoint()));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

double cyclic_spread(std::span<const double> weights) {
  const std::size_t d = weights.size();
  if (d == 0) throw DimensionError("cyclic_spread: empty weights");
  // Cut the circle before each site, unwrap to a line and take the ordinary
  // weighted variance; the centre is then free to sit between sites.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t cut = 0; cut < d; ++cut) {
    double mass = 0.0, mean = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double w = weights[(cut + j) % d];
      mass += w;
      mean += w * static_cast<double>(j);
    }
    if (mass <= 0.0) return 0.0;
    mean /= mass;
    double var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double dev = static_cast<double>(j) - mean;
      var += weights[(cut + j) % d] * dev * dev;
    }
    best = std::min(best, var / mass);
  }
  return std::sqrt(best);
}

UncertaintyReport uncertainty_report(const State& t0, const CyclicGrid& grid) {
  const std::size_t d = grid.size();
  if (t0.dim() != d) throw DimensionError("uncertainty_report: state has wrong size");
  const Matrix f = grid.dft();
  std::vector<double> fq(d), gp(d);
  const Matrix in_momentum = f.adjoint() * t0.op().matrix() * f;
  for (std::size_t k = 0; k < d; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    fq[k] = t0.op().matrix()(i, i).real();
    gp[k] = in_momentum(i, i).real();
  }
  UncertaintyReport r;
  r.position_spread = cyclic_spread(fq);
  r.momentum_spread = cyclic_spread(gp);
  r.product = r.position_spread * r.momentum_spread * kTwoPi / static_cast<double>(d);
  return r;
}

}  // namespace povmlab::models
