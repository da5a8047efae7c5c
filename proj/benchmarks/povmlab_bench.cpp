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

#include <complex>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "povmlab/kerrqnd.hpp"
#include "povmlab/linalg.hpp"
#include "povmlab/models.hpp"
#include "povmlab/mzi.hpp"
#include "povmlab/povm.hpp"
#include "povmlab/random.hpp"
#include "povmlab/spin.hpp"

namespace {

using namespace povmlab;

void BM_expm_anti_hermitian(benchmark::State& state) {
  Rng rng(1);
  const auto dim = static_cast<std::size_t>(state.range(0));
  const Operator a = Complex(0.0, 1.0) * random_hermitian(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_expm_anti_hermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_expm_general(benchmark::State& state) {
  Rng rng(2);
  const auto dim = static_cast<std::size_t>(state.range(0));
  const Operator a = random_hermitian(dim, rng) + random_unitary(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_expm_general)->Arg(4)->Arg(16)->Arg(64);

void BM_mzi_unitary(benchmark::State& state) {
  const mzi::FockSpace space{static_cast<std::size_t>(state.range(0))};
  const mzi::MZIParams p{{0.5, 0.2}, {0.994, 1.1}, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(mzi::mzi_unitary(p, space));
}
BENCHMARK(BM_mzi_unitary)->Arg(1)->Arg(4)->Arg(8);

void BM_mzi_induced_from_scheme(benchmark::State& state) {
  const mzi::FockSpace space{static_cast<std::size_t>(state.range(0))};
  const mzi::MZIParams p{{0.4, 0.0}, {0.7, 0.5}, 1.0};
  const State vac = mzi::number_state(space.dim(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_observable(mzi::mzi_scheme(p, space, vac)));
  }
}
BENCHMARK(BM_mzi_induced_from_scheme)->Arg(2)->Arg(4);

void BM_coexist_oracle(benchmark::State& state) {
  const spin::BlochVector a1(0.6, 0.1, 0.0), a2(0.05, 0.65, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(spin::coexist_oracle(a1, a2));
}
BENCHMARK(BM_coexist_oracle);

void BM_spin_phase_effect(benchmark::State& state) {
  const spin::SpinPhaseSpace space(static_cast<double>(state.range(0)) / 2.0);
  const spin::Interval x{0.4, 2.9};
  for (auto _ : state) benchmark::DoNotOptimize(spin::spin_phase_effect(space, x));
}
BENCHMARK(BM_spin_phase_effect)->Arg(1)->Arg(7)->Arg(31);

void BM_kerr_joint_closed_form(benchmark::State& state) {
  const auto probe = kerrqnd::coherent_probe(Complex(3.0, 0.0), 0.5, 8, 33);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kerrqnd::joint_path_interference_povm(0.75, 0.6, probe));
  }
}
BENCHMARK(BM_kerr_joint_closed_form);

void BM_kerr_joint_three_mode(benchmark::State& state) {
  const auto probe = kerrqnd::coherent_probe(Complex(3.0, 0.0), 0.5, 8, 33);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kerrqnd::compressed_joint_povm(0.75, 0.6, probe));
  }
}
BENCHMARK(BM_kerr_joint_three_mode)->Unit(benchmark::kMillisecond);

void BM_tradeoff_scan(benchmark::State& state) {
  const std::vector<double> amps{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const double eps2[] = {0.5};
  for (auto _ : state) benchmark::DoNotOptimize(kerrqnd::tradeoff_scan(amps, 0.5, eps2));
}
BENCHMARK(BM_tradeoff_scan)->Unit(benchmark::kMillisecond);

void BM_unsharp_position_scheme(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const models::CyclicGrid grid(d);
  const Vector phi = haar_random_vector(d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_observable(models::shift_scheme(phi, grid)));
  }
}
BENCHMARK(BM_unsharp_position_scheme)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
