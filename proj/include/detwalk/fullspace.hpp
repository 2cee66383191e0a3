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
#include <string>
#include <utility>
#include <vector>

#include "detwalk/combinatorics.hpp"
#include "detwalk/linalg.hpp"
#include "detwalk/sparse.hpp"
#include "detwalk/subspaces.hpp"

namespace detwalk {

inline constexpr std::int64_t kFullSpaceCap = 200000;

class CapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// States |R, y>, y outside R, ordered lexicographically by (R, y).
struct VertexWalkBasis {
  JohnsonParams params;
  Subset K = 0;
  std::vector<Subset> subsets;  // r-subsets in lex order

  std::int64_t coin_dim() const { return params.N - params.r; }
  std::int64_t size() const { return static_cast<std::int64_t>(subsets.size()) * coin_dim(); }
  std::int64_t index_of(Subset R, int y) const;
  std::pair<Subset, int> state(std::int64_t i) const;
};

// States |R, R'> with |R & R'| = r1 - 1, indexed by (rank R, x in R, x' outside R)
// where R' = R - x + x'.
struct EdgeWalkBasis {
  std::int64_t n = 0;
  std::int64_t r1 = 0;
  Subset T = 0;
  std::vector<Subset> subsets;

  std::int64_t block() const { return r1 * (n - r1); }
  std::int64_t size() const { return static_cast<std::int64_t>(subsets.size()) * block(); }
  std::int64_t index_of(Subset R, Subset Rp) const;
  std::pair<Subset, Subset> state(std::int64_t i) const;
};

// Two vertex walks J(r1, m) x J(r2, m), each with one marked element.
// Index is i1 * f2.size() + i2.
struct ProductWalkBasis {
  VertexWalkBasis f1;
  VertexWalkBasis f2;
  std::int64_t size() const { return f1.size() * f2.size(); }
};

VertexWalkBasis enumerate_vertex_basis(const JohnsonParams &p, Subset K,
                                       std::int64_t cap = kFullSpaceCap);
EdgeWalkBasis enumerate_edge_basis(std::int64_t n, std::int64_t r1, Subset T,
                                   std::int64_t cap = kFullSpaceCap);
ProductWalkBasis enumerate_product_basis(std::int64_t r1, std::int64_t r2, std::int64_t m,
                                         int marked1 = 0, int marked2 = 0,
                                         std::int64_t cap = kFullSpaceCap);

// Projectors onto the two families of local superpositions.
SparseOp vertex_projector_A(const VertexWalkBasis &b);
SparseOp vertex_projector_B(const VertexWalkBasis &b);
SparseOp full_vertex_step(const VertexWalkBasis &b, double theta1, double theta2);

SparseOp full_edge_coin(const EdgeWalkBasis &b);
SparseOp full_edge_swap(const EdgeWalkBasis &b);
SparseOp full_edge_step(const EdgeWalkBasis &b);

SparseOp full_product_step(const ProductWalkBasis &b);

// Permutation of [N] acting on vertex-walk states.
SparseOp vertex_permutation(const VertexWalkBasis &b, const std::vector<int> &perm);

struct ClassProjector {
  std::vector<std::string> labels;
  std::vector<int> class_of;             // per full state, -1 if unclassified
  std::vector<std::int64_t> class_size;

  int rows() const { return static_cast<int>(labels.size()); }
  std::int64_t cols() const { return static_cast<std::int64_t>(class_of.size()); }
  RealMatrix dense() const;
  SparseOp sparse() const;
};

// Throws ParameterError naming any empty class.
ClassProjector class_projector(const VertexWalkBasis &b);
ClassProjector class_projector(const EdgeWalkBasis &b);
ClassProjector class_projector(const ProductWalkBasis &b);

struct ReductionReport {
  double maxdev = 0.0;   // |P U P^dagger - reduced|_max
  double leakage = 0.0;  // |(I - P^dagger P) U P^dagger|_max
  bool pass = false;
};

ReductionReport verify_reduction(const SparseOp &full, const ClassProjector &P,
                                 const Operator &reduced, double tol = 1e-10);
// Dense overload for small operators.
ReductionReport verify_reduction(const Operator &full, const ClassProjector &P,
                                 const Operator &reduced, double tol = 1e-10);

// P applied to the uniform superposition over all full states.
RealVector project_uniform(const ClassProjector &P);

}  // namespace detwalk
