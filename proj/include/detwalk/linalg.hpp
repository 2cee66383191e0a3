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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace detwalk {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Default tolerances. Every routine that checks a bound takes it as an
// argument defaulting to one of these.
struct Tolerances {
  double unitary = 1e-12;
  double state_norm = 1e-12;
  double eig_residual = 1e-9;
  double reconstruction = 1e-8;
};

inline constexpr Tolerances kDefaultTol{};

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Operator identity(Eigen::Index dim);

// Throws LinalgError on a dimension mismatch.
Operator mat_mul(const Operator &a, const Operator &b);

// u^t by repeated squaring.
Operator mat_power(const Operator &u, std::uint64_t t);

// max_{ij} |(U^dagger U - I)_{ij}|
double unitarity_defect(const Operator &u);
bool is_unitary(const Operator &u, double tol = kDefaultTol.unitary);

double max_abs(const Operator &m);

struct EigenPair {
  double phase;  // in (-pi, pi]
  StateVector vec;
};

struct UnitaryEigen {
  std::vector<EigenPair> pairs;
  double residual = 0.0;         // max_j |U v_j - e^{i phi_j} v_j|
  double orthonormality = 0.0;   // |V^dagger V - I|_max
};

// Eigenpairs of a unitary through the complex Schur form, which is diagonal
// for normal input. Throws LinalgError (with the residual) if the result does
// not meet tol.
UnitaryEigen eig_unitary(const Operator &u, double tol = kDefaultTol.eig_residual);

// |U - sum_j e^{i phi_j} |v_j><v_j| |_max
double reconstruction_error(const Operator &u, const UnitaryEigen &e);

// I - (1 - e^{i phase}) |v><v|. Throws if v is not normalized.
Operator reflection_about(const StateVector &v, double phase,
                          double norm_tol = kDefaultTol.state_norm);

// Projector sum over listed basis indices.
Operator basis_projector(Eigen::Index dim, const std::vector<Eigen::Index> &idx);

// Unitary whose first column is v (Householder reflector, phase-corrected).
Operator prep_from_state(const StateVector &v, double norm_tol = kDefaultTol.state_norm);

// Wraps to (-pi, pi].
double wrap_pi(double x);
// Wraps to [0, 2 pi).
double wrap_two_pi(double x);

// Nearest integer, ties away from zero.
std::int64_t round_half_away(double x);

}  // namespace detwalk
