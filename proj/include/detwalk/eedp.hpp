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

#include <vector>

#include "detwalk/linalg.hpp"
#include "detwalk/search.hpp"
#include "detwalk/subspaces.hpp"

namespace detwalk {

// t steps of the vertex walk acting as a pure phase on psi0:
// U(theta1, theta2)^t = e^{i beta} (I - (1 - e^{i beta}) |psi0><psi0|).
struct EedpSolution {
  double theta1 = 0.0;  // in [0, 2 pi)
  double theta2 = 0.0;  // in (-pi, pi]
  int t = 0;
  double beta = 0.0;    // in (0, 2 pi)
  double residual = 0.0;
  double beta_relation_residual = 0.0;  // |beta - t (theta1 + theta2)/2| mod 2 pi
  int winding_small = 0;  // windings of the two rotation blocks
  int winding_big = 0;
};

struct EedpOptions {
  double t_multiplier = 12.0;  // t <= ceil(t_multiplier * sqrt(r))
  int winding_small = 4;
  int winding_big = 5;
  int max_winding = 10;  // enumerate_eedp only
  double tol = 1e-8;
};

// Principal angles (small, big) between the two coin subspaces, excluding the
// shared direction psi0.
std::pair<double, double> eedp_principal_angles(const ReducedWalk &w);

// |U^t - e^{i beta} (I - (1 - e^{i beta}) |psi0><psi0|)|_max
double eedp_residual(const ReducedWalk &w, double theta1, double theta2, int t, double beta);

// Smallest t carrying the configured winding pair.
EedpSolution solve_eedp(const JohnsonParams &p, const MarkedClass &target, const EedpOptions &opt = {});

// Every verified solution with windings up to opt.max_winding and t in range,
// ordered by t.
std::vector<EedpSolution> enumerate_eedp(const JohnsonParams &p, const MarkedClass &target,
                                         const EedpOptions &opt = {});

}  // namespace detwalk
