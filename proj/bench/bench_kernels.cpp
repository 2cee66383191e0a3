// Copyright 2026 The detwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "detwalk/fullspace.hpp"
#include "detwalk/pipeline.hpp"
#include "detwalk/sparse.hpp"

using namespace detwalk;

namespace {

const SparseOp &step_op() {
  static const SparseOp u = [] {
    const auto b = enumerate_vertex_basis({14, 5}, from_elements({0, 1}));
    return full_vertex_step(b, 1.1, 0.7);
  }();
  return u;
}

Operator random_block(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Operator x(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = cplx(g(rng), g(rng));
  }
  return x;
}

void BM_apply_parallel(benchmark::State &st) {
  const StateVector x = random_block(step_op().cols(), 1).col(0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply(step_op(), x));
}

void BM_apply_serial(benchmark::State &st) {
  const StateVector x = random_block(step_op().cols(), 1).col(0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::apply(step_op(), x));
}

void BM_apply_block_parallel(benchmark::State &st) {
  const Operator x = random_block(step_op().cols(), 8);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::apply_block(step_op(), x));
}

void BM_apply_block_serial(benchmark::State &st) {
  const Operator x = random_block(step_op().cols(), 8);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::apply_block(step_op(), x));
}

const TriangleInstance &instance(int n) {
  static std::map<int, TriangleInstance> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, generate_instance(n, static_cast<std::int64_t>(n) * n * n, 3, true, 5)).first;
  }
  return it->second;
}

void BM_scan_parallel(benchmark::State &st) {
  const auto &inst = instance(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::scan_triangles(inst.n(), inst.M(), inst.d(), inst.weights()));
}

void BM_scan_serial(benchmark::State &st) {
  const auto &inst = instance(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernels::serial::scan_triangles(inst.n(), inst.M(), inst.d(), inst.weights()));
  }
}

}  // namespace

BENCHMARK(BM_apply_parallel);
BENCHMARK(BM_apply_serial);
BENCHMARK(BM_apply_block_parallel);
BENCHMARK(BM_apply_block_serial);
BENCHMARK(BM_scan_parallel)->Arg(128)->Arg(512);
BENCHMARK(BM_scan_serial)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
