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

#include "detwalk/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace detwalk {

SparseOp sparse_identity(std::int64_t dim) {
  SparseOp id(dim, dim);
  id.setIdentity();
  return id;
}

double sparse_max_abs(const SparseOp &m) {
  double best = 0.0;
  for (std::int64_t k = 0; k < m.outerSize(); ++k) {
    for (SparseOp::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

double sparse_unitarity_defect(const SparseOp &u) {
  if (u.rows() != u.cols()) return INFINITY;
  SparseOp g = u.adjoint() * u;
  g -= sparse_identity(u.rows());
  return sparse_max_abs(g);
}

double sparse_max_diff(const SparseOp &a, const SparseOp &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("sparse_max_diff: shape mismatch");
  }
  SparseOp d = a - b;
  return sparse_max_abs(d);
}

namespace kernels {

namespace {
void check_shapes(const SparseOp &a, Eigen::Index xrows) {
  if (a.cols() != xrows) throw std::invalid_argument("sparse apply: dimension mismatch");
}
}  // namespace

StateVector apply(const SparseOp &a, const StateVector &x) {
  check_shapes(a, x.size());
  StateVector y(a.rows());
  const std::int64_t *outer = a.outerIndexPtr();
  const std::int64_t *inner = a.innerIndexPtr();
  const cplx *val = a.valuePtr();
  const std::int64_t rows = a.rows();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    cplx acc{0.0, 0.0};
    for (std::int64_t k = outer[i]; k < outer[i + 1]; ++k) acc += val[k] * x(inner[k]);
    y(i) = acc;
  }
  return y;
}

Operator apply_block(const SparseOp &a, const Operator &x) {
  check_shapes(a, x.rows());
  const Eigen::Index m = x.cols();
  Operator y(a.rows(), m);
  const std::int64_t *outer = a.outerIndexPtr();
  const std::int64_t *inner = a.innerIndexPtr();
  const cplx *val = a.valuePtr();
  const std::int64_t rows = a.rows();
  // columns outermost: x and y are column-major
#pragma omp parallel for collapse(2) schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    for (std::int64_t i = 0; i < rows; ++i) {
      const cplx *xc = x.col(j).data();
      cplx acc{0.0, 0.0};
      for (std::int64_t k = outer[i]; k < outer[i + 1]; ++k) acc += val[k] * xc[inner[k]];
      y(i, j) = acc;
    }
  }
  return y;
}

namespace serial {

StateVector apply(const SparseOp &a, const StateVector &x) {
  check_shapes(a, x.size());
  StateVector y = StateVector::Zero(a.rows());
  for (std::int64_t i = 0; i < a.outerSize(); ++i) {
    for (SparseOp::InnerIterator it(a, i); it; ++it) y(i) += it.value() * x(it.col());
  }
  return y;
}

Operator apply_block(const SparseOp &a, const Operator &x) {
  Operator y(a.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) y.col(j) = serial::apply(a, StateVector(x.col(j)));
  return y;
}

}  // namespace serial
}  // namespace kernels
}  // namespace detwalk
