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

#pragma once

#include <cstdint>

#include <Eigen/SparseCore>

#include "detwalk/linalg.hpp"

namespace detwalk {

// Row-major compressed sparse rows; full-space walk operators live here.
using SparseOp = Eigen::SparseMatrix<cplx, Eigen::RowMajor, std::int64_t>;
using Triplet = Eigen::Triplet<cplx, std::int64_t>;

SparseOp sparse_identity(std::int64_t dim);
double sparse_max_abs(const SparseOp &m);
// max |(U^dagger U - I)_{ij}|
double sparse_unitarity_defect(const SparseOp &u);
// max |A - B|_{ij} over the union of the patterns
double sparse_max_diff(const SparseOp &a, const SparseOp &b);

namespace kernels {

// y = A x, rows split across OpenMP threads.
StateVector apply(const SparseOp &a, const StateVector &x);
// Y = A X for a thin dense block X.
Operator apply_block(const SparseOp &a, const Operator &x);

namespace serial {
StateVector apply(const SparseOp &a, const StateVector &x);
Operator apply_block(const SparseOp &a, const Operator &x);
}  // namespace serial

}  // namespace kernels
}  // namespace detwalk
