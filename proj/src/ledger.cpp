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

#include <cmath>

#include "detwalk/pipeline.hpp"

namespace detwalk {

namespace {

double n97(std::int64_t n) { return std::pow(static_cast<double>(n), 9.0 / 7.0); }

void fill_costs(QueryLedger &q, const LayerParams &p, const LedgerConstants &k) {
  const double r1 = static_cast<double>(p.r1), r2 = static_cast<double>(p.r2);
  q.params = p;
  q.s1 = r1 * r2;
  q.u1 = 2.0 * (r1 + r2);
  q.s2 = 0.0;
  q.u2 = 2.0 * r1;
  q.s4 = static_cast<double>(p.m);
  q.u4 = k.u4;
  q.c4 = 0.0;
  q.eps1 = epsilon_layer1(p.n, p.r1);
  q.eps2 = epsilon_vertex_10(p.n1(), p.r2);
  q.eps4 = epsilon_layer4(p.r1, p.r2, p.m);
}

}  // namespace

double QueryLedger::ratio() const { return c0 / n97(params.n); }
double QueryLedger::formula_ratio() const { return f_c0 / n97(params.n); }

void fill_formula(QueryLedger &q, const LedgerConstants &k) {
  fill_costs(q, q.params, k);
  const double n = static_cast<double>(q.params.n);
  const double m = static_cast<double>(q.params.m);
  q.f_c3 = q.s4 + (std::sqrt(m) * q.u4 + q.c4) / std::sqrt(q.eps4);
  q.f_c2 = std::sqrt(n) * q.f_c3;
  q.f_c1bar = q.s2 + (std::sqrt(static_cast<double>(q.params.r2)) * q.u2 + q.f_c2) / std::sqrt(q.eps2);
  q.f_c1 = 2.0 * q.u1 + 4.0 * q.f_c1bar;
  q.f_c0 = q.s1 + (std::sqrt(static_cast<double>(q.params.r1)) * q.u1 + q.f_c1) / std::sqrt(q.eps1);
}

QueryLedger account(const AlgorithmPlan &plan, const LedgerConstants &k) {
  QueryLedger q;
  q.params = plan.params;
  fill_formula(q, k);

  // A search with prep cost Q, check cost c and k Long iterations costs
  // (2k + 1) Q + k c; a check that runs a lower layer costs two runs of it.
  const double k4 = plan.l4.search.k;
  q.walk4 = q.s4 + plan.l4.t2 * (plan.l4.t1 * q.u4 + q.c4);
  q.search4 = (2.0 * k4 + 1.0) * q.walk4 + k4 * q.c4;
  q.c3 = 2.0 * q.search4 + q.c4;

  q.search3 = plan.l3.search.k * q.c3;
  q.c2 = 2.0 * q.search3;

  // each of the 2 k2 Grover steps uses U^t once and the layer check once
  const double k2 = plan.l2.search.k;
  q.search2 = q.s2 + 2.0 * k2 * (plan.l2.eedp.t * q.u2 + q.c2);
  q.c1bar = q.search2;
  q.c1 = 2.0 * q.u1 + 4.0 * q.c1bar;

  const double k1 = plan.l1.search.k;
  q.walk1 = q.s1 + plan.l1.t2 * (plan.l1.t1 * q.u1 + q.c1);
  q.search1 = (2.0 * k1 + 1.0) * q.walk1 + k1 * q.c1;
  q.c0 = q.search1;
  return q;
}

}  // namespace detwalk
