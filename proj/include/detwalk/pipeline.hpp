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

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detwalk/eedp.hpp"
#include "detwalk/search.hpp"
#include "detwalk/subspaces.hpp"

namespace detwalk {

struct Triple {
  int a = 0, b = 0, c = 0;  // a < b < c
  bool operator==(const Triple &) const = default;
};

class PromiseViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TriangleScan {
  std::int64_t count = 0;
  std::optional<Triple> first;  // lexicographically smallest
};

namespace kernels {
// Counts triples with w_ab + w_bc + w_ca = d (mod M). Rows split across threads.
TriangleScan scan_triangles(int n, std::int64_t M, std::int64_t d, const std::vector<std::int64_t> &w);
namespace serial {
TriangleScan scan_triangles(int n, std::int64_t M, std::int64_t d, const std::vector<std::int64_t> &w);
}
}  // namespace kernels

class TriangleInstance {
 public:
  // Validates shape, symmetry, range and the at-most-one promise.
  static TriangleInstance create(int n, std::int64_t M, std::int64_t d, std::vector<std::int64_t> weights);

  int n() const { return n_; }
  std::int64_t M() const { return M_; }
  std::int64_t d() const { return d_; }
  const std::vector<std::int64_t> &weights() const { return w_; }
  std::int64_t w(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
  // Found while validating the promise.
  const std::optional<Triple> &planted() const { return planted_; }
  bool is_target(int a, int b, int c) const;

 private:
  int n_ = 0;
  std::int64_t M_ = 0, d_ = 0;
  std::vector<std::int64_t> w_;
  std::optional<Triple> planted_;
};

// Fresh exhaustive scan. Throws PromiseViolation on two or more triples.
std::optional<Triple> classical_oracle(const TriangleInstance &inst);

TriangleInstance generate_instance(int n, std::int64_t M, std::int64_t d, bool plant, std::uint64_t seed,
                                   int max_attempts = 1000);

// ---- layer plans --------------------------------------------------------

struct AmplifiedLayer {
  int t1 = 0, t2 = 0;
  double p = 0.0;  // exact success amplitude of the walk phase
  SearchPlan search;
  double fidelity = 0.0;
  double outside_mass = 0.0;
};

struct Layer1Plan : AmplifiedLayer {
  std::int64_t n = 0, r1 = 0;
};

struct Layer2Plan {
  std::int64_t n1 = 0, r2 = 0;
  double epsilon = 0.0;
  EedpSolution eedp;
  SearchPlan search;
  double fidelity = 0.0;
  double outside_mass = 0.0;
};

struct Layer3Plan {
  std::int64_t size = 0;  // n - r1 - r2 - 1
  SearchPlan search;
  double fidelity = 0.0;
  double outside_mass = 0.0;
};

struct Layer4Plan : AmplifiedLayer {
  std::int64_t r1 = 0, r2 = 0, m = 0;
};

enum class EedpPolicy {
  fixed_winding,  // smallest t with the configured winding pair
  min_cost,       // cheapest layer-2 search over all enumerated solutions
};

struct LedgerConstants {
  double u4 = 4.0;
};

struct PlanOptions {
  EedpOptions eedp;
  EedpPolicy policy = EedpPolicy::min_cost;
  Scheme layer2_scheme = Scheme::fixed_beta;
  LedgerConstants constants;
  double fidelity_tol = 1e-10;
};

Layer1Plan plan_layer1(std::int64_t n, std::int64_t r1, double tol = 1e-10);
// c2 and u2 feed the min_cost policy; they are ignored by fixed_winding.
Layer2Plan plan_layer2(std::int64_t n1, std::int64_t r2, const PlanOptions &opt = {}, double c2 = 0.0,
                       double u2 = 0.0);
Layer3Plan plan_layer3(std::int64_t n, std::int64_t r1, std::int64_t r2, double tol = 1e-10);
Layer4Plan plan_layer4(std::int64_t r1, std::int64_t r2, std::int64_t m, double tol = 1e-10);

// Query totals. The formula column evaluates the asymptotic recurrences with
// exact marked fractions; the plan column counts the iterations the plans run.
struct QueryLedger {
  LayerParams params;
  double s1 = 0, u1 = 0, s2 = 0, u2 = 0, s4 = 0, u4 = 0, c4 = 0;
  double eps1 = 0, eps2 = 0, eps4 = 0;

  // formula recurrences
  double f_c3 = 0, f_c2 = 0, f_c1bar = 0, f_c1 = 0, f_c0 = 0;

  // plan accounting
  double walk4 = 0, search4 = 0;  // Q4, A4
  double search3 = 0;             // A3
  double search2 = 0;             // A2
  double walk1 = 0, search1 = 0;  // Q1, A1
  double c3 = 0, c2 = 0, c1bar = 0, c1 = 0, c0 = 0;

  double ratio() const;          // c0 / n^{9/7}
  double formula_ratio() const;  // f_c0 / n^{9/7}
};

// Plan-independent recurrences for given parameters and constants.
void fill_formula(QueryLedger &q, const LedgerConstants &k);

struct AlgorithmPlan {
  LayerParams params;
  Layer4Plan l4;
  Layer3Plan l3;
  Layer2Plan l2;
  Layer1Plan l1;
  QueryLedger ledger;
  // |<psi0|final>| per layer (4, 3, 2, 1) when every check is the identity
  std::array<double, 4> idle_fidelity{};
};

// Plan accounting from iteration counts; fills every field of q.
QueryLedger account(const AlgorithmPlan &plan, const LedgerConstants &k);

// Builds layers bottom-up (4, 3, 2, 1) and checks each one's fidelity.
AlgorithmPlan build_algorithm_plan(const LayerParams &p, const PlanOptions &opt = {});
// Memoized by (n, default options).
const AlgorithmPlan &algorithm_plan_for(std::int64_t n);

QueryLedger ledger(std::int64_t n, const PlanOptions &opt = {});

// ---- emulation ------------------------------------------------------------

struct LayerOutcome {
  std::string name;
  double fidelity = 0.0;
  double outside_mass = 0.0;
  bool degenerate = false;
};

struct EmulationTrace {
  std::vector<LayerOutcome> layers;
  std::vector<int> R1, R2, S1, S2;
  int y = -1, z = -1;
  std::optional<Triple> verdict;
  double total_queries = 0.0;
  bool disjoint = false;
};

EmulationTrace emulate(const TriangleInstance &inst, std::uint64_t seed, double fidelity_tol = 1e-9);
EmulationTrace emulate(const TriangleInstance &inst, std::uint64_t seed, const AlgorithmPlan &plan,
                       double fidelity_tol = 1e-9);

}  // namespace detwalk
