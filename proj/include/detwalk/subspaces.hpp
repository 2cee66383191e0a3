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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detwalk/linalg.hpp"

namespace detwalk {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Johnson graph J(N, r).
struct JohnsonParams {
  std::int64_t N = 0;
  std::int64_t r = 0;
  void validate() const;  // 1 <= r <= N - 2
};

struct LayerParams {
  std::int64_t n = 0;
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  std::int64_t m = 0;

  std::int64_t n1() const { return n - r1; }
  std::int64_t n2() const { return n - r1 - r2; }
  void validate() const;

  // r1 = n^{4/7}, r2 = n^{5/7}, m = n^{3/7}. Without allow_rounding, n must
  // be an exact seventh power.
  static LayerParams from_n(std::int64_t n, bool allow_rounding = false);
  // Integer j with j^7 == n, if any.
  static std::optional<std::int64_t> seventh_root(std::int64_t n);
};

struct MarkedClass {
  int j0 = 1;
  int l0 = 0;
  void validate() const;
};

enum class WalkKind { vertex5, layer1, layer4 };

struct ReducedWalk {
  WalkKind kind = WalkKind::vertex5;
  std::vector<std::string> basis_labels;
  RealMatrix A;                 // orthonormal columns, non-negative
  RealMatrix B;                 // empty for the edge walk
  std::optional<RealMatrix> swapS;
  RealVector psi0;
  int target_index = 0;
  double epsilon = 0.0;
  std::vector<std::pair<std::string, std::int64_t>> sizes;

  int dim() const { return static_cast<int>(psi0.size()); }
  StateVector psi0_complex() const { return psi0.cast<cplx>(); }
};

// |A^T A - I|_max
double orthonormality_defect(const RealMatrix &a);

// Position of class (j, l) in the order |0,0>, |0,1>, |1,0>, |1,1>, |2,0>.
int vertex5_index(int j, int l);

ReducedWalk build_vertexwalk_5d(const JohnsonParams &p, const MarkedClass &target);
// (I - (1 - e^{i theta2}) B B^T)(I - (1 - e^{i theta1}) A A^T)
Operator vertexwalk_step(const ReducedWalk &w, double theta1, double theta2);

ReducedWalk build_layer1_10d(std::int64_t n, std::int64_t r1);
// S (2 A A^T - I)
Operator edgewalk_step(const ReducedWalk &w);

ReducedWalk build_layer4_9d(std::int64_t r1, std::int64_t r2, std::int64_t m);
// (2 B B^T - I)(2 A A^T - I)
Operator product_walk_step(const ReducedWalk &w);

double marked_fraction(const ReducedWalk &w);

// Closed forms for the marked fractions.
double epsilon_vertex_10(std::int64_t N, std::int64_t r);
double epsilon_layer1(std::int64_t n, std::int64_t r1);
double epsilon_layer4(std::int64_t r1, std::int64_t r2, std::int64_t m);

}  // namespace detwalk
