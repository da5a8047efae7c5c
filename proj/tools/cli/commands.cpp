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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <utility>

#include "povmlab/error.hpp"
#include "povmlab/kerrqnd.hpp"
#include "povmlab/linalg.hpp"
#include "povmlab/models.hpp"
#include "povmlab/mzi.hpp"
#include "povmlab/povm.hpp"
#include "povmlab/random.hpp"

namespace povmlab::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fixed limits that do not scale with POVMLAB_TOL.
constexpr double kRowSumLimit = 1e-9;
constexpr double kAnticoincidenceLimit = 1e-12;
constexpr double kMarginalLimit = 1e-12;
constexpr double kWitnessLimit = -1e-10;
constexpr double kCovarianceLimit = 1e-10;
constexpr double kUniformityLimit = 1e-12;
constexpr double kProperDefectLimit = 1e-6;
// The coherent characteristic is off by at most the 1e-8 truncation leakage.
constexpr double kVisibilityLimit = 1e-6;
// Within this band around 2 the criterion and the oracle may legitimately differ.
constexpr double kBoundaryBand = 1e-9;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ValidationError(std::string(what) + " must be finite");
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> out(steps, lo);
  if (steps > 1) {
    const double h = (hi - lo) / static_cast<double>(steps - 1);
    for (std::size_t i = 1; i + 1 < steps; ++i) out[i] = lo + h * static_cast<double>(i);
    out.back() = hi;
  }
  return out;
}

Json base_config(const RunConfig& c) {
  Json j = Json::object();
  j["command"] = c.subcommand;
  return j;
}

Label sign_label(int a) { return Label{a}; }

std::string sign_name(const Label& l) {
  std::string out = "G";
  for (int v : l) out += v > 0 ? '+' : '-';
  return out;
}

// Row describing a qubit effect E = (t I + r.sigma) / 2.
std::vector<Cell> qubit_row(const std::string& name, const Operator& e) {
  const spin::BlochVector r = spin::bloch_vector(e);
  return {name, e.trace().real(), r.x(), r.y(), r.z(), min_eigenvalue(e)};
}

}  // namespace

Report cmd_mzi_scan(const RunConfig& c) {
  for (double v : {c.eps1, c.eps2, c.theta1, c.theta2, c.delta_min, c.delta_max}) {
    require_finite(v, "mzi-scan parameters");
  }
  if (c.delta_steps == 0) throw ValidationError("--delta-steps must be at least 1");
  if (c.delta_max < c.delta_min) throw ValidationError("--delta-max is below --delta-min");
  const std::size_t nmax = c.nmax == 0 ? 1 : c.nmax;
  mzi::validate({c.eps1, c.theta1});
  mzi::validate({c.eps2, c.theta2});

  Report r;
  r.config = base_config(c);
  r.config["eps1"] = c.eps1;
  r.config["eps2"] = c.eps2;
  r.config["theta1"] = c.theta1;
  r.config["theta2"] = c.theta2;
  r.config["delta_min"] = c.delta_min;
  r.config["delta_max"] = c.delta_max;
  r.config["delta_steps"] = c.delta_steps;
  r.config["nmax"] = nmax;
  r.config["tolerance"] = c.tolerance;
  r.columns = {"delta", "p10", "p01", "p_other", "eps_analytic", "abs_diff", "row_sum"};

  const mzi::FockSpace space{nmax};
  const State photon = mzi::number_state(space.dim(), 1);
  const State vacuum = mzi::number_state(space.dim(), 0);
  const std::vector<double> deltas = linspace(c.delta_min, c.delta_max, c.delta_steps);

  double worst_diff = 0.0, worst_sum = 0.0, worst_other = 0.0;
  std::vector<double> p10s;
  for (double delta : deltas) {
    const mzi::MZIParams params{{c.eps1, c.theta1}, {c.eps2, c.theta2}, delta};
    const RealMatrix p =
        mzi::detection_probabilities(mzi::mzi_output_state(photon, vacuum, params, space), space);
    const double p10 = p(1, 0), p01 = p(0, 1);
    const double other = p.sum() - p10 - p01;
    const double eps = mzi::effective_transparency(params);
    const double diff = std::abs(p10 - eps);
    const double sum = p10 + p01 + other;
    worst_diff = std::max(worst_diff, diff);
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    worst_other = std::max(worst_other, std::abs(other));
    p10s.push_back(p10);
    r.rows.push_back({delta, p10, p01, other, eps, diff, sum});
  }
  r.checks.push_back(Check::at_most("max_abs_diff", worst_diff, c.tolerance));
  r.checks.push_back(Check::at_most("max_row_sum_error", worst_sum, kRowSumLimit));
  r.checks.push_back(Check::at_most("max_p_other", worst_other, kAnticoincidenceLimit));

  // Least-squares fit p10 = c0 + a cos(delta) + b sin(delta), when the scan
  // pins down all three coefficients.
  const auto n = static_cast<Eigen::Index>(deltas.size());
  RealMatrix design(n, 3);
  RealVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = deltas[static_cast<std::size_t>(i)];
    design.row(i) << 1.0, std::cos(d), std::sin(d);
    rhs(i) = p10s[static_cast<std::size_t>(i)];
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() == 3) {
    const RealVector coef = qr.solve(rhs);
    const double amplitude = std::hypot(coef(1), coef(2));
    r.checks.push_back(Check::info("fit_offset", coef(0)));
    r.checks.push_back(Check::info("fit_amplitude", amplitude));
    if (coef(0) > 0.0) r.checks.push_back(Check::info("fit_depth", amplitude / coef(0)));
    r.checks.push_back(Check::info("fit_max_residual", (design * coef - rhs).cwiseAbs().maxCoeff()));
  }
  return r;
}

Report cmd_kerr_tradeoff(const RunConfig& c) {
  require_finite(c.lambda, "--lambda");
  if (c.amplitudes.empty()) throw ValidationError("--amp needs at least one amplitude");
  if (c.bins == 0) throw ValidationError("--bins must be positive");
  const bool number = c.probe == "number";
  if (!number && c.probe != "coherent") throw ValidationError("--probe is coherent or number");
  const kerrqnd::ProbeKind kind =
      number ? kerrqnd::ProbeKind::kNumber : kerrqnd::ProbeKind::kCoherent;
  const double eps2[] = {c.eps2};
  const auto rows = kerrqnd::tradeoff_scan(c.amplitudes, c.lambda, eps2, c.bins, kind, c.nmax);

  Report r;
  r.config = base_config(c);
  r.config["probe"] = c.probe;
  r.config["lambda"] = c.lambda;
  r.config["eps2"] = c.eps2;
  r.config["amplitudes"] = c.amplitudes;
  r.config["bins"] = c.bins;
  r.config["nmax"] = c.nmax;
  r.config["tolerance"] = c.tolerance;
  r.columns = {"amplitude", "lambda",           "eps2",            "nmax3",
               "visibility", "visibility_closed", "path_confidence", "row_sum"};

  double worst_vis = 0.0, worst_sum = 0.0, worst_half = 0.0;
  for (const auto& row : rows) {
    // A number state has |tr[T' e^{-i lambda N}]| = 1.
    const double damping =
        number ? 1.0 : std::exp(-row.amplitude * row.amplitude * (1.0 - std::cos(row.lambda)));
    const double closed = 2.0 * std::sqrt(row.eps2 * (1.0 - row.eps2)) * damping;
    worst_vis = std::max(worst_vis, std::abs(row.visibility - closed));
    worst_sum = std::max(worst_sum, std::abs(row.probe_mass - 1.0));
    if (number || row.amplitude == 0.0) {
      worst_half = std::max(worst_half, std::abs(row.path_confidence - 0.5));
    }
    r.rows.push_back({row.amplitude, row.lambda, row.eps2, static_cast<long long>(row.nmax3),
                      row.visibility, closed, row.path_confidence, row.probe_mass});
  }

  // Monotonicity along increasing amplitude, whatever order they came in.
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].amplitude < rows[b].amplitude;
  });
  bool vis_down = true, conf_up = true;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& lo = rows[order[i - 1]];
    const auto& hi = rows[order[i]];
    vis_down = vis_down && hi.visibility <= lo.visibility + 1e-12;
    conf_up = conf_up && hi.path_confidence >= lo.path_confidence - 1e-12;
  }
  r.checks.push_back(Check::info("monotone", vis_down && conf_up ? 1.0 : 0.0));
  r.checks.push_back(Check::info("visibility_nonincreasing", vis_down ? 1.0 : 0.0));
  r.checks.push_back(Check::info("confidence_nondecreasing", conf_up ? 1.0 : 0.0));
  r.checks.push_back(Check::at_most("max_visibility_closed_diff", worst_vis, kVisibilityLimit));
  r.checks.push_back(Check::at_most("max_row_sum_error", worst_sum, kRowSumLimit));
  // Vacuum and number probes carry no path information at all.
  r.checks.push_back(Check::at_most("max_uninformed_confidence_offset", worst_half, 0.0));
  return r;
}

Report cmd_spin(const RunConfig& c) {
  if (!c.a1 || !c.a2) throw ValidationError("spin needs both --a1 and --a2");
  const spin::BlochVector a1((*c.a1)[0], (*c.a1)[1], (*c.a1)[2]);
  const spin::BlochVector a2((*c.a2)[0], (*c.a2)[1], (*c.a2)[2]);
  // Rejects |a| > 1.
  const Effect f1 = spin::spin_effect(a1);
  const Effect f2 = spin::spin_effect(a2);

  Report r;
  r.config = base_config(c);
  r.config["a1"] = *c.a1;
  r.config["a2"] = *c.a2;
  r.config["tolerance"] = c.tolerance;
  r.columns = {"effect", "trace", "rx", "ry", "rz", "min_eigenvalue"};
  r.rows.push_back(qubit_row("F(a1)", f1.op()));
  r.rows.push_back(qubit_row("F(a2)", f2.op()));

  const double value = spin::coexist_value(a1, a2);
  const bool decision = spin::coexist_criterion(a1, a2);
  const bool oracle = spin::coexist_oracle(a1, a2);
  r.checks.push_back(Check::info("criterion", value));
  r.checks.push_back(Check::info("coexistent", decision ? 1.0 : 0.0));
  r.checks.push_back(Check::info("oracle_coexistent", oracle ? 1.0 : 0.0));
  const double disagreement = decision == oracle ? 0.0 : 1.0;
  if (std::abs(value - 2.0) < kBoundaryBand) {
    r.checks.push_back(Check::info("oracle_disagreement", disagreement));
  } else {
    r.checks.push_back(Check::at_most("oracle_disagreement", disagreement, 0.0));
  }
  if (!decision) return r;

  const DiscreteObservable g = spin::joint_spin_observable(a1, a2);
  double min_eig = 1.0;
  Operator total = Operator::zero(2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Operator& e = g.effect(i).op();
    r.rows.push_back(qubit_row(sign_name(g.outcomes()[i]), e));
    min_eig = std::min(min_eig, min_eigenvalue(e));
    total += e;
  }
  double marg = 0.0;
  const DiscreteObservable m1 = marginal(g, 0), m2 = marginal(g, 1);
  for (int s : {1, -1}) {
    const double sd = static_cast<double>(s);
    marg = std::max(marg, max_abs_diff(m1.effect(sign_label(s)).op(),
                                       spin::spin_effect(sd * a1).op()));
    marg = std::max(marg, max_abs_diff(m2.effect(sign_label(s)).op(),
                                       spin::spin_effect(sd * a2).op()));
  }
  r.checks.push_back(Check::at_least("witness_min_eigenvalue", min_eig, kWitnessLimit));
  r.checks.push_back(Check::at_most("witness_completeness",
                                    max_abs_diff(total, Operator::identity(2)), c.tolerance));
  r.checks.push_back(Check::at_most("witness_marginal_residual", marg, kMarginalLimit));
  return r;
}

Report cmd_spin_phase(const RunConfig& c) {
  const spin::SpinPhaseSpace space(c.spin);
  std::vector<spin::Interval> intervals = c.intervals;
  if (intervals.empty()) intervals.push_back({0.0, std::numbers::pi});
  for (const auto& x : intervals) spin::validate_interval(x);

  Report r;
  r.config = base_config(c);
  r.config["spin"] = c.spin;
  Json xs = Json::array();
  for (const auto& x : intervals) xs.push_back({x.lo, x.hi});
  r.config["intervals"] = std::move(xs);
  r.config["shifts"] = c.shifts;
  r.config["seed"] = c.seed;
  r.columns = {"interval", "lo", "hi", "row_m", "col_m", "re", "im"};

  Rng rng(c.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const std::size_t dim = space.dim();
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const spin::Interval& x = intervals[i];
    const Operator s = spin::spin_phase_effect(space, x).op();
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        r.rows.push_back({static_cast<long long>(i), x.lo, x.hi, space.m(a), space.m(b),
                          s(a, b).real(), s(a, b).imag()});
      }
    }
    const std::string tag = "X" + std::to_string(i) + ".";
    const double length = x.hi - x.lo;
    double uniformity = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      uniformity = std::max(uniformity, std::abs(s(a, a).real() - length / kTwoPi));
    }
    double covariance = 0.0;
    for (std::size_t k = 0; k < c.shifts; ++k) {
      covariance = std::max(covariance, spin::spin_phase_covariance_check(space, x, angle(rng)));
    }
    const double defect = operator_norm(s * s - s);
    r.checks.push_back(Check::info(tag + "eigenvalue_min", min_eigenvalue(s)));
    r.checks.push_back(Check::info(tag + "eigenvalue_max", max_eigenvalue(s)));
    r.checks.push_back(Check::at_most(tag + "uniformity_residual", uniformity, kUniformityLimit));
    r.checks.push_back(Check::at_most(tag + "covariance_residual", covariance, kCovarianceLimit));
    if (length >= 0.1 && length <= kTwoPi - 0.1) {
      r.checks.push_back(Check::at_least(tag + "idempotency_defect", defect, kProperDefectLimit));
    } else {
      r.checks.push_back(Check::info(tag + "idempotency_defect", defect));
    }
    if (length == kTwoPi) {
      r.checks.push_back(
          Check::at_most(tag + "identity_residual", max_abs_diff(s, Operator::identity(dim)), 0.0));
    }
  }
  return r;
}

Report cmd_phase_space(const RunConfig& c) {
  const models::CyclicGrid grid(c.grid_d);
  const std::size_t d = grid.size();
  Rng rng(c.seed);
  const State t0(random_density_matrix(d, rng));
  const State rho(random_density_matrix(d, rng));
  const DiscreteObservable g = models::phase_space_observable(t0, grid);

  Report r;
  r.config = base_config(c);
  r.config["grid_d"] = d;
  r.config["seed"] = c.seed;
  r.config["tolerance"] = c.tolerance;
  r.columns = {"marginal", "site", "probability", "convolution", "abs_diff"};

  Operator total = Operator::zero(d);
  for (const Effect& e : g.effects()) total += e.op();

  // Independent route: the marginals are the sharp distributions of rho
  // convolved with those of T0, in position and in the DFT basis.
  const Matrix f = grid.dft();
  const Matrix t0_mom = f.adjoint() * t0.op().matrix() * f;
  const Matrix rho_mom = f.adjoint() * rho.op().matrix() * f;
  double worst = 0.0;
  double sums[2] = {0.0, 0.0};
  for (std::size_t axis = 0; axis < 2; ++axis) {
    const DiscreteObservable m = marginal(g, axis);
    const Matrix& t0m = axis == 0 ? t0.op().matrix() : t0_mom;
    const Matrix& rhom = axis == 0 ? rho.op().matrix() : rho_mom;
    for (std::size_t q = 0; q < d; ++q) {
      double conv = 0.0;
      for (std::size_t s = 0; s < d; ++s) {
        const auto off = static_cast<Eigen::Index>(grid.wrap(static_cast<long long>(s) -
                                                             static_cast<long long>(q)));
        const auto si = static_cast<Eigen::Index>(s);
        conv += rhom(si, si).real() * t0m(off, off).real();
      }
      const double p = probability(rho, m.effect(Label{static_cast<int>(q)}));
      worst = std::max(worst, std::abs(p - conv));
      sums[axis] += p;
      r.rows.push_back({std::string(axis == 0 ? "position" : "momentum"),
                        static_cast<long long>(q), p, conv, std::abs(p - conv)});
    }
  }
  const models::UncertaintyReport u = models::uncertainty_report(t0, grid);
  r.checks.push_back(
      Check::at_most("completeness", max_abs_diff(total, Operator::identity(d)), c.tolerance));
  r.checks.push_back(Check::at_most("max_convolution_diff", worst, c.tolerance));
  r.checks.push_back(Check::at_most(
      "max_row_sum_error", std::max(std::abs(sums[0] - 1.0), std::abs(sums[1] - 1.0)),
      kRowSumLimit));
  r.checks.push_back(Check::info("position_spread", u.position_spread));
  r.checks.push_back(Check::info("momentum_spread", u.momentum_spread));
  r.checks.push_back(Check::info("spread_product", u.product));
  return r;
}

Report run_command(const RunConfig& config) {
  if (config.subcommand == "mzi-scan") return cmd_mzi_scan(config);
  if (config.subcommand == "kerr-tradeoff") return cmd_kerr_tradeoff(config);
  if (config.subcommand == "spin") return cmd_spin(config);
  if (config.subcommand == "spin-phase") return cmd_spin_phase(config);
  if (config.subcommand == "phase-space") return cmd_phase_space(config);
  throw ValidationError("unknown command '" + config.subcommand + "'");
}

}  // namespace povmlab::cli
