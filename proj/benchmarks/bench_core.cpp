// Copyright 2026 The quenchdist Authors
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

#include <benchmark/benchmark.h>

#include <random>

#include "quenchdist/fermion_corr.hpp"
#include "quenchdist/pfaffian.hpp"
#include "quenchdist/rdm.hpp"

namespace {

using namespace quenchdist;

Eigen::MatrixXcd random_antisymmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cplx(normal(rng), normal(rng));
      m(j, i) = -m(i, j);
    }
  return m;
}

QuenchEvolver fig1_evolver(int m) {
  return QuenchEvolver({XYModel{0.5, 0.2}, XYModel{0.5, 0.8}, MomentumGrid::thermodynamic(m)});
}

void BM_Pfaffian(benchmark::State& state) {
  const auto m = random_antisymmetric(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(m));
}
BENCHMARK(BM_Pfaffian)->RangeMultiplier(2)->Range(16, 256);

void BM_BuildTable(benchmark::State& state) {
  const auto ev = fig1_evolver(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_table(ev, 3.0, 103));
}
BENCHMARK(BM_BuildTable)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_DistanceSlice(benchmark::State& state) {
  const auto table = build_table(fig1_evolver(4096), 3.0, 103);
  std::vector<int> sites;
  for (int i = 0; i < state.range(0); ++i) sites.push_back(i);
  const SpinSubset subset(sites);
  for (auto _ : state) {
    SliceEvaluator ev(table, 100, XYModel{0.5, 0.2}, {});
    benchmark::DoNotOptimize(ev.max_distance(subset));
  }
}
BENCHMARK(BM_DistanceSlice)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
