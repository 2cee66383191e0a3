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

#include "detwalk/pipeline.hpp"

using namespace detwalk;

TEST_CASE("formula recurrences at n=128") {
  PlanOptions opt;
  opt.constants.u4 = 1.0;
  const QueryLedger q = ledger(128, opt);
  CHECK(q.params.r1 == 16);
  CHECK(q.params.r2 == 32);
  CHECK(q.params.m == 8);
  CHECK(q.f_c3 == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(q.f_c2 == doctest::Approx(std::sqrt(128.0) * 16.0).epsilon(1e-14));
  CHECK(q.s2 == 0.0);
  CHECK(q.c1 == 2.0 * q.u1 + 4.0 * q.c1bar);
  CHECK(q.f_c1 == 2.0 * q.u1 + 4.0 * q.f_c1bar);
}

TEST_CASE("plan accounting follows the iteration counts") {
  const AlgorithmPlan &p = algorithm_plan_for(128);
  const QueryLedger &q = p.ledger;
  CHECK(q.walk4 == q.s4 + p.l4.t2 * (p.l4.t1 * q.u4 + q.c4));
  CHECK(q.search4 == (2 * p.l4.search.k + 1) * q.walk4 + p.l4.search.k * q.c4);
  CHECK(q.c3 == 2 * q.search4 + q.c4);
  CHECK(q.search3 == p.l3.search.k * q.c3);
  CHECK(q.c2 == 2 * q.search3);
  CHECK(q.c1bar == q.search2);
  CHECK(q.c0 == q.search1);
  CHECK(q.ratio() == doctest::Approx(q.c0 / std::pow(128.0, 9.0 / 7.0)));
  const QueryLedger again = account(p, LedgerConstants{});
  CHECK(again.c0 == q.c0);
}

TEST_CASE("ratio band across seventh powers") {
  double lo = INFINITY, hi = 0.0;
  for (std::int64_t j = 2; j <= 6; ++j) {
    std::int64_t n = 1;
    for (int i = 0; i < 7; ++i) n *= j;
    const QueryLedger q = ledger(n);
    CHECK(q.c1 == 2.0 * q.u1 + 4.0 * q.c1bar);
    lo = std::min(lo, q.ratio());
    hi = std::max(hi, q.ratio());
  }
  CHECK(hi / lo <= 4.0);
}

TEST_CASE("ledger needs a valid n") {
  CHECK_THROWS_AS(ledger(100), ParameterError);
  CHECK_THROWS_AS(ledger(1), ParameterError);
}
