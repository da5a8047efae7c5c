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
 * Mach-Zehnder interferometer with a Kerr medium in arm b coupling to a
 * probe mode c: U_K = I (x) exp(-i lambda N_b N_c).
 *
 * Three-mode operators act on a (x) b (x) c. The a and b modes share one
 * truncation, the probe has its own.
 *
 * Signs follow the literal unitaries. A photon in arm b rotates the probe
 * by exp(-i lambda N_c), so the probe statistics conditioned on that arm
 * are tr[T' e^{i lambda N} E(X) e^{-i lambda N}], and with a number state
 * |k> in the probe the Kerr medium acts like an extra phase shift
 * delta + lambda k.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "povmlab/linalg.hpp"
#include "povmlab/mzi.hpp"
#include "povmlab/povm.hpp"
#include "povmlab/spin.hpp"

namespace povmlab::kerrqnd {

using spin::Interval;

/// Probe state, Kerr coupling and probe readout.
struct ProbeConfig {
  State probe_state;
  double lambda = 0.0;
  DiscreteObservable readout;
};

void validate(const ProbeConfig& probe);

struct KerrCircuit {
  mzi::MZIParams mzi;
  ProbeConfig probe;
  /// Truncation of the a and b modes.
  std::size_t nmax_ab = 1;
};

/// eps1 = eps2 = 1/2, theta1 = theta2 = pi/2.
KerrCircuit canonical_circuit(double delta, ProbeConfig probe, std::size_t nmax_ab = 1);

/// I (x) exp(-i lambda N_b (x) N_c) on dims {da, db, dc}; diagonal.
Operator kerr_unitary(double lambda, std::size_t da, std::size_t db, std::size_t dc);

/// Probe truncation: max(16, ceil(|z|^2 + 6|z|)), raised further until the
/// coherent leakage drops below 1e-8.
std::size_t coherent_nmax(double amplitude);

/// 1 - e^{-|z|^2} sum_{n<dim} |z|^{2n}/n!.
double coherent_leakage(Complex z, std::size_t dim);

/// Normalised truncated coherent state; throws ValidationError when the
/// truncation leaks 1e-8 or more of the norm.
State coherent_state(Complex z, std::size_t dim);

/// M(X)_{mn} = int_X e^{i(m-n)a} da / 2 pi on Fock indices 0..dim-1.
Effect phase_effect(std::size_t dim, const Interval& x);
/// Uniform bins [2 pi k / bins, 2 pi (k+1) / bins], labels k.
DiscreteObservable truncated_phase_povm(std::size_t dim, std::size_t bins);
/// max |e^{i l N} M(X) e^{-i l N} - M(X + l)| (shift split at 2 pi).
double phase_covariance_residual(std::size_t dim, const Interval& x, double shift);

/// Spectral projections of (c + c^dag)/2 (truncated) grouped into bins
/// (-inf, e0), [e0, e1), ..., [ek, inf); labels are bin indices.
DiscreteObservable quadrature_readout(std::size_t dim, std::span<const double> edges);

/// Default probe: coherent state |z> with phase readout in `bins` bins.
/// dim = 0 picks coherent_nmax(|z|) + 1; an explicit dim must still meet the
/// leakage bound.
ProbeConfig coherent_probe(Complex z, double lambda, std::size_t bins = 8,
                           std::size_t dim = 0);
ProbeConfig number_probe(std::size_t k, std::size_t dim, double lambda, std::size_t bins = 8);

/// U_beta U_K V_delta U_alpha on a (x) b (x) c.
Operator three_mode_unitary(const KerrCircuit& circuit);

/// W = U (T (x) |0><0| (x) T') U^dag.
State three_mode_output(const State& a_state, const KerrCircuit& circuit);

/// p(n, bin) = tr[W |n><n| (x) I (x) E(bin)], rows n, columns bins.
RealMatrix detection_statistics(const State& w, const DiscreteObservable& readout,
                                std::size_t nmax_ab);

/// System a, probe b (x) c in |0><0| (x) T', pointer |n><n| (x) I (x) E(X).
MeasurementScheme a_mode_scheme(const KerrCircuit& circuit);

/// induced_observable(a_mode_scheme(circuit)); labels (n, bin).
DiscreteObservable full_a_mode_observable(const KerrCircuit& circuit);

/// Closed form for the canonical setting (throws ValidationError otherwise):
///   A(n,X) = sum_m C(m+n, n) |m+n><m+n|
///            tr[T' S^n C^m e^{i N l N3/2} E(X) e^{-i N l N3/2} S^n C^m],
/// N = m + n, S = sin(delta/2 + l N3 / 2), C = cos(delta/2 + l N3 / 2).
DiscreteObservable induced_a_mode_observable(const KerrCircuit& circuit);

/// Single-photon probe marginal in the canonical setting:
/// (tr[T' E(X)] + tr[T' e^{i l N} E(X) e^{-i l N}]) / 2 per bin.
std::vector<double> single_photon_probe_marginal(const ProbeConfig& probe);

/// Joint path/interference observable on span{|10>, |01>}, labels (n, bin),
/// n in {0, 1}:
///   F(n,X) = |10><10| [e2 d_n1 + (1-e2) d_n0] tr[T' E]
///          + |01><01| [(1-e2) d_n1 + e2 d_n0] tr[T' e^{ilN} E e^{-ilN}]
///          - |10><01| sqrt(e2(1-e2)) e^{i t2} (d_n1 - d_n0) tr[T' E e^{-ilN}]
///          - |01><10| sqrt(e2(1-e2)) e^{-i t2} (d_n1 - d_n0) tr[T' e^{ilN} E].
DiscreteObservable joint_path_interference_povm(double eps2, double theta2,
                                                const ProbeConfig& probe);

/// The same observable from the three-mode unitary: induced observable of
/// the (a, b) field compressed to span{|10>, |01>}.
DiscreteObservable compressed_joint_povm(double eps2, double theta2, const ProbeConfig& probe);

/// tr[T' e^{-i lambda N}].
Complex probe_characteristic(const ProbeConfig& probe);

/// 2 sqrt(e2(1-e2)) |tr[T' e^{-i lambda N}]|.
double visibility(double eps2, const ProbeConfig& probe);

/// Probability of naming the arm correctly from the probe readout under
/// equal priors: 1/2 + 1/4 sum_X |p(X) - q(X)| with p(X) = tr[T' E(X)],
/// q(X) = tr[T' e^{ilN} E(X) e^{-ilN}].
double path_confidence(const ProbeConfig& probe);

enum class ProbeKind { kCoherent, kNumber };

struct TradeoffRow {
  double amplitude = 0.0;
  double lambda = 0.0;
  double eps2 = 0.0;
  std::size_t nmax3 = 0;
  double visibility = 0.0;
  double path_confidence = 0.0;
  double probe_mass = 0.0;  // sum_X tr[T' E(X)], 1 up to rounding
};

/// One row per (amplitude, eps2), amplitudes outermost. The number probe
/// uses |k> with k = round(amplitude^2). nmax3 = 0 sizes each probe by
/// coherent_nmax; a fixed nmax3 throws if a coherent probe leaks past it.
std::vector<TradeoffRow> tradeoff_scan(std::span<const double> amplitudes, double lambda,
                                       std::span<const double> eps2_grid,
                                       std::size_t bins = 8,
                                       ProbeKind kind = ProbeKind::kCoherent,
                                       std::size_t nmax3 = 0);

}  // namespace povmlab::kerrqnd
