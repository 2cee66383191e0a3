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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detwalk/linalg.hpp"

namespace detwalk {

enum class Scheme { long_phase, fixed_beta };

std::string to_string(Scheme s);

// Deterministic search parameters. G(a, b) = S_psi(b) S_M(a) with
// S_psi(b) = I - (1 - e^{-ib})|psi><psi| and S_M(a) = I - (1 - e^{ia}) Pi_M.
// Long runs G(alpha, -alpha)^k; fixed-beta runs [G(alpha1, beta) G(alpha2, beta)]^k.
struct SearchPlan {
  Scheme scheme = Scheme::long_phase;
  double lambda = 1.0;
  int k = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // |<t_perp| final>| in the two-dimensional model
};

class SearchError : public std::runtime_error {
 public:
  SearchError(const std::string &what, double best_residual = -1.0, int min_k = -1)
      : std::runtime_error(what), best_residual(best_residual), min_k(min_k) {}
  double best_residual;
  int min_k;
};

double k_opt(double lambda);
// Smallest k with sin(pi/(4k+2)) <= sqrt(lambda); 0 when lambda == 1.
int min_long_k(double lambda);
SearchPlan long_params(double lambda, int k);

// pi / |4 asin(sqrt(lambda) sin(beta/2)) mod [-pi/2, pi/2]|; throws on a
// zero reduced value.
double k_lower(double lambda, double beta);
int default_fixed_beta_k(double lambda, double beta);

struct FixedBetaOptions {
  bool equal_angles = false;
  double tol = 1e-10;
  int grid = 24;
  int refine_seeds = 8;
};

SearchPlan fixed_beta_params(double lambda, double beta, int k, const FixedBetaOptions &opt = {});
// k chosen as the smallest integer >= k_lower.
SearchPlan fixed_beta_params(double lambda, double beta, const FixedBetaOptions &opt = {});

// Final state in the two-dimensional model {t, t_perp}.
StateVector run_two_dim(const SearchPlan &plan);

// Starts from prep|0>; S_psi(beta) = prep e^{-i beta |0><0|} prep^dagger.
StateVector run_search(const Operator &prep, const std::vector<int> &marked, const SearchPlan &plan);
StateVector run_search(const Operator &prep, int target_index, const SearchPlan &plan);
// Same iteration with an explicitly supplied S_psi (any global phase is fine).
StateVector run_search_with(const StateVector &start, const Operator &s_psi,
                            const std::vector<int> &marked, const SearchPlan &plan);

double target_fidelity(const StateVector &v, const std::vector<int> &marked);
// sum over unmarked i of |v_i|^2
double mass_outside(const StateVector &v, const std::vector<int> &marked);

// |<target| (step^t1 check)^t2 |psi0>|
double exact_success_amplitude(const Operator &step, const Operator &check, const StateVector &psi0,
                               int target_index, int t1, int t2);
// (step^t1 check)^t2
Operator amplification_operator(const Operator &step, const Operator &check, int t1, int t2);

struct EigenOverlapReport {
  double theta = 0.0;             // phase of the dominant pair, |phi|
  double phase_plus = 0.0;
  double phase_minus = 0.0;
  double target_overlap_plus = 0.0;   // |<t|theta_+>|
  double target_overlap_minus = 0.0;
  double psi_overlap_plus = 0.0;      // |<psi0|theta_+>|
  double psi_overlap_minus = 0.0;
  double residual_mass = 0.0;         // 1 - |Pi_+- psi0|^2
  double pair_asymmetry = 0.0;        // |phase_plus + phase_minus|
  std::vector<double> spectrum;
};

EigenOverlapReport eigen_overlap_report(const Operator &step_check, const StateVector &psi0,
                                        int target_index);

}  // namespace detwalk
