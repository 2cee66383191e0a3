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

#include <doctest.h>

#include <random>

#include "detwalk/fullspace.hpp"
#include "detwalk/sparse.hpp"

using namespace detwalk;

TEST_CASE("sparse identity") {
  const SparseOp i = sparse_identity(7);
  CHECK(sparse_max_abs(i) == 1.0);
  CHECK(sparse_unitarity_defect(i) == 0.0);
  CHECK(sparse_max_diff(i, i) == 0.0);
}

TEST_CASE("parallel kernels match the serial references") {
  const auto b = enumerate_vertex_basis({8, 3}, from_elements({0, 1}));
  const SparseOp u = full_vertex_step(b, 1.1, 0.7);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  StateVector x(u.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cplx(g(rng), g(rng));
  const StateVector y = kernels::apply(u, x);
  const StateVector ys = kernels::serial::apply(u, x);
  CHECK((y - ys).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((y - StateVector(u * x)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(y.norm() - x.norm()) <= 1e-10);

  Operator blk(u.cols(), 3);
  for (Eigen::Index j = 0; j < 3; ++j) {
    for (Eigen::Index i = 0; i < blk.rows(); ++i) blk(i, j) = cplx(g(rng), g(rng));
  }
  const Operator z = kernels::apply_block(u, blk);
  CHECK((z - kernels::serial::apply_block(u, blk)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("dimension mismatch") {
  const SparseOp i = sparse_identity(4);
  CHECK_THROWS(kernels::apply(i, StateVector::Zero(3)));
}
