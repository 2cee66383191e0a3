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

#include "detwalk/search.hpp"
#include "detwalk/subspaces.hpp"

using namespace detwalk;

namespace {

Operator toy_prep(double lambda) {
  StateVector v(2);
  v << std::sqrt(lambda), std::sqrt(1.0 - lambda);
  return prep_from_state(v);
}

}  // namespace

TEST_CASE("k_opt values") {
  CHECK(k_opt(1.0) == doctest::Approx(0.0));
  CHECK(k_opt(0.25) == doctest::Approx(1.0));
  CHECK(k_opt(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(k_opt(0.0), SearchError);
  CHECK_THROWS_AS(k_opt(1.5), SearchError);
}

TEST_CASE("long phase angles") {
  CHECK(long_params(0.25, 1).alpha1 == doctest::Approx(kPi).epsilon(1e-7));
  CHECK(long_params(0.25, 2).alpha1 == doctest::Approx(2 * std::asin(2 * std::sin(kPi / 10))).epsilon(1e-14));
  CHECK(long_params(0.25, 2).alpha1 == doctest::Approx(1.33248).epsilon(1e-5));
  const SearchPlan p1 = long_params(1.0, 3);
  CHECK(p1.alpha1 == doctest::Approx(2 * std::asin(std::sin(kPi / 14))).epsilon(1e-14));
  CHECK(p1.beta == doctest::Approx(-p1.alpha1));
  CHECK_THROWS_AS(long_params(0.01, 2), SearchError);
}

TEST_CASE("long determinism grid") {
  for (double lambda : {0.01, 0.05, 0.1, 0.25, 0.5, 0.9}) {
    const int base = static_cast<int>(std::ceil(k_opt(lambda)));
    for (int k : {min_long_k(lambda), base + 1, base + 5}) {
      const SearchPlan p = long_params(lambda, k);
      CHECK(std::abs(run_two_dim(p)(0)) >= 1.0 - 1e-10);
      CHECK(std::abs(std::abs(run_search(toy_prep(lambda), 0, p)(0)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("k_lower") {
  CHECK(k_lower(0.25, kPi) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(k_lower(1.0, kPi), SearchError);
  CHECK(k_lower(0.1, kPi) == doctest::Approx(2.441).epsilon(1e-3));
  CHECK(default_fixed_beta_k(0.1, kPi) == 3);
  CHECK(k_lower(0.3, 0.01) > 100.0);
}

TEST_CASE("fixed-beta solver") {
  const SearchPlan p = fixed_beta_params(0.25, kPi);
  CHECK(p.k == 3);
  CHECK(std::abs(run_two_dim(p)(0)) >= 1.0 - 1e-10);
  for (int k : {4, 5, 6}) CHECK(std::abs(run_two_dim(fixed_beta_params(0.25, kPi, k))(0)) >= 1.0 - 1e-10);
  CHECK_THROWS_AS(fixed_beta_params(0.25, kPi, 2), SearchError);

  // Grover with 4 steps is exact at this lambda, so equal angles recover pi
  const double lam = std::pow(std::sin(kPi / 18.0), 2);
  const SearchPlan eq = fixed_beta_params(lam, kPi, 2, {true});
  CHECK(std::abs(wrap_pi(eq.alpha1 - kPi)) <= 1e-9);
  CHECK(eq.alpha1 == doctest::Approx(eq.alpha2));
  const SearchPlan lp = long_params(0.3, 6);
  const SearchPlan back = fixed_beta_params(0.3, kTwoPi - lp.alpha1, 3, {true});
  CHECK(std::abs(wrap_pi(back.alpha1 - lp.alpha1)) <= 1e-9);

  const SearchPlan q = fixed_beta_params(126.0 / 285.0, 1.29 * kPi);
  CHECK(std::abs(run_two_dim(q)(0)) >= 1.0 - 1e-10);
  const SearchPlan s = fixed_beta_params(0.3, 2.0);
  CHECK(s.k == default_fixed_beta_k(0.3, 2.0));
  CHECK(std::abs(run_search(toy_prep(0.3), 0, s)(0)) >= 1.0 - 1e-10);
  CHECK_THROWS_AS(fixed_beta_params(0.3, 0.05, 1), SearchError);

  const SearchPlan one = fixed_beta_params(1.0, 1.0);
  CHECK(one.k == 0);
  CHECK(std::abs(run_search(toy_prep(1.0), 0, one)(0)) == doctest::Approx(1.0));
}

TEST_CASE("marked-set helpers") {
  StateVector v(3);
  v << cplx(0.6), cplx(0.0, 0.8), cplx(0.0);
  CHECK(target_fidelity(v, {0, 1}) == doctest::Approx(1.0));
  CHECK(mass_outside(v, {0}) == doctest::Approx(0.64));
}

TEST_CASE("success amplitude and eigen overlap") {
  const ReducedWalk w = build_layer1_10d(14, 4);
  const Operator step = edgewalk_step(w);
  const Operator check = reflection_about(StateVector::Unit(10, 3), kPi);
  const StateVector psi = w.psi0_complex();
  CHECK(exact_success_amplitude(step, check, psi, 3, 2, 0) == doctest::Approx(std::sqrt(w.epsilon)));
  for (int t2 = 0; t2 < 6; ++t2) {
    const double p = exact_success_amplitude(step, identity(10), psi, 3, 3, t2);
    CHECK(p <= 1.0 + 1e-12);
  }
  const Operator amp = amplification_operator(step, check, 2, 1);
  CHECK(unitarity_defect(amp) <= 1e-12);

  const double lambda = 0.2;
  StateVector s(2);
  s << std::sqrt(lambda), std::sqrt(1 - lambda);
  const Operator g = -reflection_about(s, kPi) * reflection_about(StateVector::Unit(2, 0), kPi);
  const EigenOverlapReport r = eigen_overlap_report(g, s, 0);
  CHECK(r.theta == doctest::Approx(2 * std::asin(std::sqrt(lambda))).epsilon(1e-12));
  CHECK(r.target_overlap_plus == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(r.residual_mass >= -1e-12);
  CHECK(r.residual_mass <= 1.0);
}

TEST_CASE("layer-4 eigen overlaps approach one over root two") {
  double prev = 1.0;
  for (std::int64_t j : {2, 4, 8}) {
    std::int64_t n = 1;
    for (int i = 0; i < 7; ++i) n *= j;
    const LayerParams lp = LayerParams::from_n(n);
    const ReducedWalk w = build_layer4_9d(lp.r1, lp.r2, lp.m);
    const int t1 = static_cast<int>(round_half_away(kPi / 2 * std::sqrt(lp.m / 2.0)));
    const Operator sc = mat_power(product_walk_step(w), static_cast<std::uint64_t>(t1)) *
                        reflection_about(StateVector::Unit(9, 8), kPi);
    const EigenOverlapReport r = eigen_overlap_report(sc, w.psi0_complex(), 8);
    const double gap = std::abs(r.target_overlap_plus - std::sqrt(0.5));
    CHECK(gap <= prev + 1e-12);
    prev = gap;
  }
  CHECK(prev < 0.02);
}
