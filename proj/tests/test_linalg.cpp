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

#include "detwalk/linalg.hpp"
#include "detwalk/subspaces.hpp"

using namespace detwalk;

namespace {

Operator reflect_of(const RealMatrix &a) {
  const Operator ac = a.cast<cplx>();
  return 2.0 * ac * ac.adjoint() - identity(a.rows());
}

}  // namespace

TEST_CASE("mat_mul identities") {
  CHECK(max_abs(mat_mul(identity(4), identity(4)) - identity(4)) == 0.0);
  Operator x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(max_abs(mat_mul(x, x) - identity(2)) == 0.0);
  const ReducedWalk w = build_layer1_10d(14, 4);
  const Operator r = reflect_of(w.A);
  CHECK(max_abs(mat_mul(r, r) - identity(10)) <= 1e-12);
  CHECK_THROWS_AS(mat_mul(identity(2), identity(3)), LinalgError);
}

TEST_CASE("mat_power") {
  const ReducedWalk w = build_layer1_10d(14, 4);
  const Operator u = edgewalk_step(w);
  CHECK(max_abs(mat_power(u, 0) - identity(10)) == 0.0);
  CHECK(max_abs(mat_power(u, 1) - u) == 0.0);
  CHECK(max_abs(mat_power(u, 5) - u * u * u * u * u) <= 1e-12);
  Operator d = Operator::Zero(3, 3);
  const double phi = 0.3;
  for (int i = 0; i < 3; ++i) d(i, i) = std::polar(1.0, phi * (i + 1));
  const Operator p = mat_power(d, 7);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p(i, i) - std::polar(1.0, 7 * phi * (i + 1))) <= 1e-13);
}

TEST_CASE("eig_unitary spectra") {
  const UnitaryEigen e0 = eig_unitary(identity(5));
  REQUIRE(e0.pairs.size() == 5);
  for (const auto &p : e0.pairs) CHECK(std::abs(p.phase) <= 1e-12);

  StateVector v = StateVector::Zero(4);
  v << 1, 2, 0, 1;
  v.normalize();
  const Operator refl = 2.0 * v * v.adjoint() - identity(4);
  const UnitaryEigen e1 = eig_unitary(refl);
  int zeros = 0, pis = 0;
  for (const auto &p : e1.pairs) {
    if (std::abs(p.phase) <= 1e-10) {
      ++zeros;
      CHECK(std::abs(std::abs(p.vec.dot(v)) - 1.0) <= 1e-10);
    } else if (std::abs(std::abs(p.phase) - kPi) <= 1e-10) {
      ++pis;
    }
  }
  CHECK(zeros == 1);
  CHECK(pis == 3);

  const Operator u = edgewalk_step(build_layer1_10d(14, 4));
  const UnitaryEigen e2 = eig_unitary(u);
  CHECK(e2.residual <= 1e-9);
  CHECK(reconstruction_error(u, e2) <= 1e-8);
  std::vector<double> phases;
  for (const auto &p : e2.pairs) phases.push_back(p.phase);
  for (double ph : phases) {
    if (std::abs(std::abs(ph) - kPi) <= 1e-9 || std::abs(ph) <= 1e-9) continue;
    bool mate = false;
    for (double q : phases) mate = mate || std::abs(q + ph) <= 1e-9;
    CHECK(mate);
  }
}

TEST_CASE("reflection_about") {
  StateVector v = StateVector::Zero(3);
  v << 0.6, 0.0, 0.8;
  CHECK(max_abs(reflection_about(v, 0.0) - identity(3)) <= 1e-15);
  const Operator r = reflection_about(v, kPi);
  CHECK(max_abs(r * r - identity(3)) <= 1e-12);
  CHECK(is_unitary(r));
  const Operator h = reflection_about(StateVector::Unit(2, 0), kPi / 2);
  CHECK(std::abs(h(0, 0) - cplx(0, 1)) <= 1e-15);
  CHECK(std::abs(h(1, 1) - cplx(1, 0)) <= 1e-15);
  CHECK(std::abs(h(0, 1)) == 0.0);
  StateVector bad = StateVector::Ones(2);
  CHECK_THROWS_AS(reflection_about(bad, 1.0), LinalgError);
}

TEST_CASE("prep_from_state maps e0 to the state") {
  StateVector v(4);
  v << cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(-0.5, 0.0), cplx(0.0, -0.5);
  const Operator h = prep_from_state(v);
  CHECK(is_unitary(h));
  CHECK((h.col(0) - v).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("basis_projector and unitarity defect") {
  const Operator p = basis_projector(4, {1, 3});
  CHECK(p(1, 1) == cplx(1.0));
  CHECK(p(0, 0) == cplx(0.0));
  CHECK(max_abs(p * p - p) == 0.0);
  CHECK_FALSE(is_unitary(p));
  CHECK(unitarity_defect(identity(3)) == 0.0);
}

TEST_CASE("angle helpers") {
  CHECK(wrap_pi(3 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(round_half_away(2.5) == 3);
  CHECK(round_half_away(-2.5) == -3);
  CHECK(round_half_away(19.99) == 20);
}
