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

#include "povmlab/kerrqnd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "phase_kernel.hpp"
#include "povmlab/error.hpp"

namespace povmlab::kerrqnd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxLeakage = 1e-8;

double binomial(std::size_t n, std::size_t k) {
  double out = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    out *= static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return out;
}

// Phases e^{i s lambda k}, k = 0..dim-1.
Vector number_phases(std::size_t dim, double lambda, double s) {
  Vector out(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    out(k) = std::polar(1.0, s * lambda * static_cast<double>(k));
  }
  return out;
}

// tr[T' L E R] for diagonal L and R.
Complex sandwich_trace(const Matrix& t, const Vector& l, const Matrix& e, const Vector& r) {
  // tr[T L E R] = sum_{k,k'} T(k',k) L(k) E(k,k') R(k').
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < e.rows(); ++k) {
    for (Eigen::Index kp = 0; kp < e.cols(); ++kp) {
      acc += t(kp, k) * l(k) * e(k, kp) * r(kp);
    }
  }
  return acc;
}

Label with_prefix(int n, const Label& tail) {
  Label out{n};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// (A (x) I_dc) * M without forming the Kronecker product.
Matrix left_kron_identity(const Matrix& a, std::size_t dc, const Matrix& m) {
  const auto c = static_cast<Eigen::Index>(dc);
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) == 0.0) continue;
      out.middleRows(i * c, c).noalias() += a(i, j) * m.middleRows(j * c, c);
    }
  }
  return out;
}

bool is_canonical(const mzi::MZIParams& p) {
  const double dt = std::remainder(p.bs1.theta - p.bs2.theta, kTwoPi);
  return std::abs(p.bs1.eps - 0.5) <= 1e-12 && std::abs(p.bs2.eps - 0.5) <= 1e-12 &&
         std::abs(dt) <= 1e-12;
}

void validate_eps(double eps2) {
  if (!(eps2 >= 0.0 && eps2 <= 1.0)) {
    throw ValidationError("kerr: transparency " + std::to_string(eps2) + " outside [0, 1]");
  }
}

}  // namespace

void validate(const ProbeConfig& probe) {
  if (!std::isfinite(probe.lambda)) throw ValidationError("kerr: lambda is not finite");
  if (probe.readout.dim() != probe.probe_state.dim()) {
    throw DimensionError("kerr: readout dim " + std::to_string(probe.readout.dim()) +
                         " != probe dim " + std::to_string(probe.probe_state.dim()));
  }
}

KerrCircuit canonical_circuit(double delta, ProbeConfig probe, std::size_t nmax_ab) {
  const double half_pi = std::numbers::pi / 2.0;
  return {{{0.5, half_pi}, {0.5, half_pi}, delta}, std::move(probe), nmax_ab};
}

Operator kerr_unitary(double lambda, std::size_t da, std::size_t db, std::size_t dc) {
  if (da == 0 || db == 0 || dc == 0) throw DimensionError("kerr_unitary: zero dimension");
  if (!std::isfinite(lambda)) throw ValidationError("kerr_unitary: lambda is not finite");
  Vector diag(static_cast<Eigen::Index>(da * db * dc));
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) {
      for (std::size_t c = 0; c < dc; ++c) {
        diag(static_cast<Eigen::Index>((a * db + b) * dc + c)) =
            std::polar(1.0, -lambda * static_cast<double>(b * c));
      }
    }
  }
  return Operator(diag.asDiagonal().toDenseMatrix(), {da, db, dc});
}

std::size_t coherent_nmax(double amplitude) {
  const double a = std::abs(amplitude);
  if (!std::isfinite(a)) throw ValidationError("coherent_nmax: amplitude is not finite");
  std::size_t n = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(a * a + 6.0 * a)));
  // The rule of thumb undershoots the leakage bound for 2 <~ |z| <~ 7.
  while (coherent_leakage(a, n + 1) >= kMaxLeakage) ++n;
  return n;
}

double coherent_leakage(Complex z, std::size_t dim) {
  const double r = std::abs(z);
  if (r == 0.0) return dim == 0 ? 1.0 : 0.0;
  // Sum the Poisson tail directly; 1 - head would lose everything below 1e-16.
  const double mean = r * r;
  const double log_r2 = 2.0 * std::log(r);
  double tail = 0.0;
  for (std::size_t n = dim;; ++n) {
    const double nn = static_cast<double>(n);
    const double term = std::exp(-mean + nn * log_r2 - std::lgamma(nn + 1.0));
    tail += term;
    if (nn > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (n > dim + 100000) break;
  }
  return std::min(tail, 1.0);
}

State coherent_state(Complex z, std::size_t dim) {
  if (dim == 0) throw DimensionError("coherent_state: dim must be positive");
  const double leak = coherent_leakage(z, dim);
  if (leak >= kMaxLeakage) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "coherent_state: truncation at dim %zu leaks %.3g of the norm",
                  dim, leak);
    throw ValidationError(buf);
  }
  Vector v(static_cast<Eigen::Index>(dim));
  v(0) = std::exp(-std::norm(z) / 2.0);
  for (Eigen::Index n = 1; n < v.size(); ++n) {
    v(n) = v(n - 1) * z / std::sqrt(static_cast<double>(n));
  }
  v.normalize();
  return State::pure(v);
}

Effect phase_effect(std::size_t dim, const Interval& x) {
  if (dim == 0) throw DimensionError("phase_effect: dim must be positive");
  spin::validate_interval(x);
  return Effect(Operator(detail::arc_kernel(dim, x.lo, x.hi, -1)));
}

DiscreteObservable truncated_phase_povm(std::size_t dim, std::size_t bins) {
  if (bins == 0) throw ValidationError("truncated_phase_povm: need at least one bin");
  std::vector<Label> labels;
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < bins; ++k) {
    const double lo = kTwoPi * static_cast<double>(k) / static_cast<double>(bins);
    const double hi = k + 1 == bins ? kTwoPi
                                    : kTwoPi * static_cast<double>(k + 1) /
                                          static_cast<double>(bins);
    labels.push_back({static_cast<int>(k)});
    effects.push_back(phase_effect(dim, {lo, hi}));
  }
  return DiscreteObservable(std::move(labels), std::move(effects));
}

double phase_covariance_residual(std::size_t dim, const Interval& x, double shift) {
  const Matrix m = phase_effect(dim, x).op().matrix();
  const Vector ph = number_phases(dim, shift, 1.0);
  const Matrix rotated = ph.asDiagonal() * m * ph.conjugate().asDiagonal();
  Matrix target = Matrix::Zero(m.rows(), m.cols());
  for (const auto& piece : spin::shift_interval(x, shift)) {
    target += phase_effect(dim, piece).op().matrix();
  }
  return (rotated - target).cwiseAbs().maxCoeff();
}

DiscreteObservable quadrature_readout(std::size_t dim, std::span<const double> edges) {
  if (dim == 0) throw DimensionError("quadrature_readout: dim must be positive");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i]) || (i > 0 && !(edges[i] > edges[i - 1]))) {
      throw ValidationError("quadrature_readout: edges must be finite and increasing");
    }
  }
  const Operator a = mzi::annihilation(dim);
  const auto eig = eigh(0.5 * (a + a.adjoint()));
  const auto nd = static_cast<Eigen::Index>(dim);
  std::vector<Matrix> sums(edges.size() + 1, Matrix::Zero(nd, nd));
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const auto bin = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), eig.values(k)) - edges.begin());
    sums[bin] += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t b = 0; b < sums.size(); ++b) {
    labels.push_back({static_cast<int>(b)});
    effects.emplace_back(std::move(sums[b]));
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

ProbeConfig coherent_probe(Complex z, double lambda, std::size_t bins, std::size_t dim) {
  if (dim == 0) dim = coherent_nmax(std::abs(z)) + 1;
  ProbeConfig p{coherent_state(z, dim), lambda, truncated_phase_povm(dim, bins)};
  validate(p);
  return p;
}

ProbeConfig number_probe(std::size_t k, std::size_t dim, double lambda, std::size_t bins) {
  if (k >= dim) throw DimensionError("number_probe: |k> outside the truncation");
  ProbeConfig p{mzi::number_state(dim, k), lambda, truncated_phase_povm(dim, bins)};
  validate(p);
  return p;
}

Operator three_mode_unitary(const KerrCircuit& circuit) {
  validate(circuit.probe);
  const mzi::FockSpace space{circuit.nmax_ab};
  const std::size_t d = space.dim();
  const std::size_t dc = circuit.probe.probe_state.dim();
  const Operator first =
      mzi::phase_shifter(circuit.mzi.delta, space) * mzi::beam_splitter(circuit.mzi.bs1, space);
  const Operator second = mzi::beam_splitter(circuit.mzi.bs2, space);
  const Matrix kerr = kerr_unitary(circuit.probe.lambda, d, d, dc).matrix().diagonal();
  Matrix m = tensor(first, Operator::identity(dc)).matrix();
  m = kerr.col(0).asDiagonal() * m;
  return Operator(left_kron_identity(second.matrix(), dc, m), {d, d, dc});
}

State three_mode_output(const State& a_state, const KerrCircuit& circuit) {
  const std::size_t d = circuit.nmax_ab + 1;
  if (a_state.dim() != d) {
    throw DimensionError("three_mode_output: a-mode state must have dim nmax+1");
  }
  const Operator u = three_mode_unitary(circuit);
  const Operator in[3] = {a_state.op(), mzi::number_state(d, 0).op(),
                          circuit.probe.probe_state.op()};
  return State((u * tensor(in) * u.adjoint()).with_dims({d, d, in[2].dim()}));
}

RealMatrix detection_statistics(const State& w, const DiscreteObservable& readout,
                                std::size_t nmax_ab) {
  const std::size_t d = nmax_ab + 1;
  const std::size_t dc = readout.dim();
  if (w.dim() != d * d * dc) throw DimensionError("detection_statistics: state dim mismatch");
  const Operator rho = partial_trace(w.op().with_dims({d, d, dc}), {0, 2});
  const auto c = static_cast<Eigen::Index>(dc);
  RealMatrix p(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(readout.size()));
  for (Eigen::Index n = 0; n < p.rows(); ++n) {
    const Matrix block = rho.matrix().block(n * c, n * c, c, c);
    for (std::size_t j = 0; j < readout.size(); ++j) {
      double v = (block * readout.effect(j).op().matrix()).trace().real();
      if (v < 0.0 && v >= -tol::kPositivity) v = 0.0;
      p(n, static_cast<Eigen::Index>(j)) = v;
    }
  }
  return p;
}

MeasurementScheme a_mode_scheme(const KerrCircuit& circuit) {
  const std::size_t d = circuit.nmax_ab + 1;
  const DiscreteObservable& readout = circuit.probe.readout;
  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t n = 0; n < d; ++n) {
    const Operator count = tensor(Operator::projector(basis_vector(d, n)), Operator::identity(d));
    for (std::size_t j = 0; j < readout.size(); ++j) {
      labels.push_back(with_prefix(static_cast<int>(n), readout.outcomes()[j]));
      effects.push_back(tensor(count, readout.effect(j).op()));
    }
  }
  MeasurementScheme s;
  s.system_dim = d;
  s.coupling = three_mode_unitary(circuit);
  s.probe_state = State(tensor(mzi::number_state(d, 0).op(), circuit.probe.probe_state.op()));
  s.pointer = DiscreteObservable::from_operators(std::move(labels), std::move(effects));
  s.support = PointerSupport::kJoint;
  return s;
}

DiscreteObservable full_a_mode_observable(const KerrCircuit& circuit) {
  return induced_observable(a_mode_scheme(circuit));
}

DiscreteObservable induced_a_mode_observable(const KerrCircuit& circuit) {
  validate(circuit.probe);
  if (!is_canonical(circuit.mzi)) {
    throw ValidationError(
        "induced_a_mode_observable: closed form needs eps1 = eps2 = 1/2 and theta1 = theta2");
  }
  const std::size_t d = circuit.nmax_ab + 1;
  const DiscreteObservable& readout = circuit.probe.readout;
  const std::size_t dc = readout.dim();
  const double lambda = circuit.probe.lambda;
  const double delta = circuit.mzi.delta;
  const Matrix& t = circuit.probe.probe_state.op().matrix();

  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t j = 0; j < readout.size(); ++j) {
      const Matrix& e = readout.effect(j).op().matrix();
      RealVector diag = RealVector::Zero(static_cast<Eigen::Index>(d));
      for (std::size_t m = 0; n + m < d; ++m) {
        const std::size_t total = n + m;
        // D = S^n C^m e^{i N lambda N3 / 2}; the weight is tr[T' D E D^dag].
        Vector dk(static_cast<Eigen::Index>(dc));
        for (Eigen::Index k = 0; k < dk.size(); ++k) {
          const double arg = delta / 2.0 + lambda * static_cast<double>(k) / 2.0;
          const double amp = std::pow(std::sin(arg), static_cast<double>(n)) *
                             std::pow(std::cos(arg), static_cast<double>(m));
          dk(k) = std::polar(amp, lambda * static_cast<double>(total * k) / 2.0);
        }
        const Complex w = sandwich_trace(t, dk, e, dk.conjugate());
        diag(static_cast<Eigen::Index>(total)) = binomial(total, n) * w.real();
      }
      labels.push_back(with_prefix(static_cast<int>(n), readout.outcomes()[j]));
      effects.push_back(Operator::diagonal(diag));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

std::vector<double> single_photon_probe_marginal(const ProbeConfig& probe) {
  validate(probe);
  const std::size_t dc = probe.probe_state.dim();
  const Matrix& t = probe.probe_state.op().matrix();
  const Vector up = number_phases(dc, probe.lambda, 1.0);
  const Vector down = up.conjugate();
  std::vector<double> out;
  for (const auto& e : probe.readout.effects()) {
    const Matrix& m = e.op().matrix();
    const double p = (t * m).trace().real();
    const double q = sandwich_trace(t, up, m, down).real();
    out.push_back(0.5 * (p + q));
  }
  return out;
}

DiscreteObservable joint_path_interference_povm(double eps2, double theta2,
                                                const ProbeConfig& probe) {
  validate(probe);
  validate_eps(eps2);
  if (!std::isfinite(theta2)) throw ValidationError("joint_path_interference_povm: theta2");
  const std::size_t dc = probe.probe_state.dim();
  const Matrix& t = probe.probe_state.op().matrix();
  const Vector up = number_phases(dc, probe.lambda, 1.0);
  const Vector down = up.conjugate();
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(dc));
  const double s = std::sqrt(eps2 * (1.0 - eps2));

  std::vector<Label> labels;
  std::vector<Operator> effects;
  for (int n = 0; n <= 1; ++n) {
    const double w10 = n == 1 ? eps2 : 1.0 - eps2;
    const double w01 = n == 1 ? 1.0 - eps2 : eps2;
    const double sign = n == 1 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < probe.readout.size(); ++j) {
      const Matrix& e = probe.readout.effect(j).op().matrix();
      const Complex t0 = (t * e).trace();
      const Complex t1 = sandwich_trace(t, up, e, down);
      const Complex t01 = sandwich_trace(t, ones, e, down);
      Matrix f(2, 2);
      f(0, 0) = w10 * t0.real();
      f(1, 1) = w01 * t1.real();
      f(0, 1) = -sign * s * std::polar(1.0, theta2) * t01;
      f(1, 0) = std::conj(f(0, 1));
      labels.push_back(with_prefix(n, probe.readout.outcomes()[j]));
      effects.emplace_back(std::move(f));
    }
  }
  return DiscreteObservable::from_operators(std::move(labels), std::move(effects));
}

DiscreteObservable compressed_joint_povm(double eps2, double theta2, const ProbeConfig& probe) {
  validate(probe);
  validate_eps(eps2);
  const mzi::FockSpace space{1};
  const std::size_t d = space.dim();
  const std::size_t dc = probe.probe_state.dim();
  const Operator bs = mzi::beam_splitter({eps2, theta2}, space);
  const Matrix kerr = kerr_unitary(probe.lambda, d, d, dc).matrix();

  std::vector<Label> labels;
  std::vector<Operator> pointer;
  for (std::size_t n = 0; n < d; ++n) {
    const Operator count = tensor(Operator::projector(basis_vector(d, n)), Operator::identity(d));
    for (std::size_t j = 0; j < probe.readout.size(); ++j) {
      labels.push_back(with_prefix(static_cast<int>(n), probe.readout.outcomes()[j]));
      pointer.push_back(tensor(count, probe.readout.effect(j).op()));
    }
  }
  MeasurementScheme s;
  s.system_dim = d * d;
  s.coupling = Operator(left_kron_identity(bs.matrix(), dc, kerr));
  s.probe_state = probe.probe_state;
  s.pointer = DiscreteObservable::from_operators(std::move(labels), std::move(pointer));
  s.support = PointerSupport::kJoint;
  return compress(induced_observable(s), mzi::single_photon_isometry(space));
}

Complex probe_characteristic(const ProbeConfig& probe) {
  validate(probe);
  const Matrix& t = probe.probe_state.op().matrix();
  const Vector down = number_phases(t.rows(), probe.lambda, -1.0);
  return (t.diagonal().array() * down.array()).sum();
}

double visibility(double eps2, const ProbeConfig& probe) {
  validate_eps(eps2);
  return 2.0 * std::sqrt(eps2 * (1.0 - eps2)) * std::abs(probe_characteristic(probe));
}

double path_confidence(const ProbeConfig& probe) {
  validate(probe);
  const std::size_t dc = probe.probe_state.dim();
  const Matrix& t = probe.probe_state.op().matrix();
  const Vector up = number_phases(dc, probe.lambda, 1.0);
  const Vector down = up.conjugate();
  double distance = 0.0;
  for (const auto& e : probe.readout.effects()) {
    const Matrix& m = e.op().matrix();
    const double p = (t * m).trace().real();
    const double q = sandwich_trace(t, up, m, down).real();
    distance += std::abs(p - q);
  }
  return 0.5 + 0.25 * distance;
}

std::vector<TradeoffRow> tradeoff_scan(std::span<const double> amplitudes, double lambda,
                                       std::span<const double> eps2_grid, std::size_t bins,
                                       ProbeKind kind, std::size_t nmax3) {
  for (double e : eps2_grid) validate_eps(e);
  std::vector<TradeoffRow> rows;
  for (double amp : amplitudes) {
    if (!(amp >= 0.0) || !std::isfinite(amp)) {
      throw ValidationError("tradeoff_scan: amplitude must be finite and non-negative");
    }
    const std::size_t nmax = nmax3 > 0 ? nmax3 : coherent_nmax(amp);
    const ProbeConfig probe =
        kind == ProbeKind::kCoherent
            ? coherent_probe(Complex(amp, 0.0), lambda, bins, nmax + 1)
            : number_probe(static_cast<std::size_t>(std::lround(amp * amp)), nmax + 1, lambda,
                           bins);
    const double confidence = path_confidence(probe);
    const double chi = std::abs(probe_characteristic(probe));
    double mass = 0.0;
    for (const Effect& e : probe.readout.effects()) mass += probability(probe.probe_state, e);
    for (double e : eps2_grid) {
      rows.push_back(
          {amp, lambda, e, nmax, 2.0 * std::sqrt(e * (1.0 - e)) * chi, confidence, mass});
    }
  }
  return rows;
}

}  // namespace povmlab::kerrqnd
