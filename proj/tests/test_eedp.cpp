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

#include <cmath>

#include "detwalk/eedp.hpp"

using namespace detwalk;

TEST_CASE("principal angles of the 5d walk") {
  const ReducedWalk w = build_vertexwalk_5d({100, 10}, {1, 0});
  const auto [a, b] = eedp_principal_angles(w);
  CHECK(a > 0.0);
  CHECK(b >= a);
  CHECK(b < kPi / 2 + 1e-12);
}

TEST_CASE("solve at N=100, r=10") {
  const EedpSolution s = solve_eedp({100, 10}, {1, 0});
  CHECK(s.residual <= 1e-8);
  CHECK(s.beta_relation_residual <= 1e-8);
  CHECK(s.t > 0);
  // far from the large-N limit here; the approach is checked below
  CHECK(s.beta / kPi == doctest::Approx(1.4616).epsilon(1e-3));
  const ReducedWalk w = build_vertexwalk_5d({100, 10}, {1, 0});
  CHECK(eedp_residual(w, s.theta1, s.theta2, s.t, s.beta) <= 1e-8);
  const Operator ut = mat_power(vertexwalk_step(w, s.theta1, s.theta2), static_cast<std::uint64_t>(s.t));
  const Operator refl = std::polar(1.0, s.beta) * reflection_about(w.psi0_complex(), s.beta);
  CHECK(max_abs(ut - refl) <= 1e-8);
}

TEST_CASE("beta approaches 1.29 pi along r = sqrt(N)") {
  double prev = INFINITY;
  for (std::int64_t N : {100, 1000, 10000}) {
    const auto r = round_half_away(std::sqrt(static_cast<double>(N)));
    const EedpSolution s = solve_eedp({N, r}, {1, 0});
    const double gap = std::abs(s.beta / kPi - 1.29);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("trivial angles are not a solution") {
  const ReducedWalk w = build_vertexwalk_5d({100, 10}, {1, 0});
  CHECK(eedp_residual(w, 0.0, 0.0, 5, 1.0) > 1e-3);
}

TEST_CASE("enumeration and budgets") {
  EedpOptions opt;
  opt.max_winding = 5;
  const auto all = enumerate_eedp({100, 10}, {1, 0}, opt);
  CHECK_FALSE(all.empty());
  for (const auto &s : all) {
    CHECK(s.residual <= opt.tol);
    CHECK(s.t <= static_cast<int>(std::ceil(opt.t_multiplier * std::sqrt(10.0))));
  }
  EedpOptions tight;
  tight.t_multiplier = 2.0;
  CHECK_THROWS_AS(solve_eedp({100, 10}, {1, 0}, tight), SearchError);
  CHECK_THROWS_AS(solve_eedp({100, 99}, {1, 0}), ParameterError);
}
