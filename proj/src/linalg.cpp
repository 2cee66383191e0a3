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

#include "detwalk/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace detwalk {

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator mat_mul(const Operator &a, const Operator &b) {
  if (a.cols() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols()) {
    std::ostringstream os;
    os << "mat_mul: dimension mismatch " << a.rows() << "x" << a.cols() << " * "
       << b.rows() << "x" << b.cols();
    throw LinalgError(os.str());
  }
  return a * b;
}

Operator mat_power(const Operator &u, std::uint64_t t) {
  if (u.rows() != u.cols()) throw LinalgError("mat_power: operator is not square");
  Operator result = identity(u.rows());
  Operator base = u;
  while (t > 0) {
    if (t & 1U) result = result * base;
    t >>= 1U;
    if (t > 0) base = base * base;
  }
  return result;
}

double max_abs(const Operator &m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Operator &u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(u.adjoint() * u - identity(u.rows()));
}

bool is_unitary(const Operator &u, double tol) { return unitarity_defect(u) <= tol; }

UnitaryEigen eig_unitary(const Operator &u, double tol) {
  if (u.rows() != u.cols()) throw LinalgError("eig_unitary: operator is not square");
  const Eigen::Index n = u.rows();
  Eigen::ComplexSchur<Operator> schur(u, true);
  if (schur.info() != Eigen::Success) {
    throw LinalgError("eig_unitary: Schur iteration did not converge");
  }
  const Operator &T = schur.matrixT();
  const Operator &Q = schur.matrixU();

  UnitaryEigen out;
  out.pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx lam = T(j, j);
    EigenPair p;
    p.phase = wrap_pi(std::arg(lam));
    p.vec = Q.col(j);
    const StateVector r = u * p.vec - std::polar(1.0, p.phase) * p.vec;
    out.residual = std::max(out.residual, r.cwiseAbs().maxCoeff());
    out.pairs.push_back(std::move(p));
  }
  out.orthonormality = max_abs(Q.adjoint() * Q - identity(n));
  if (!(out.residual <= tol) || !(out.orthonormality <= tol)) {
    std::ostringstream os;
    os << "eig_unitary: residual " << out.residual << ", orthonormality defect "
       << out.orthonormality << " exceed " << tol;
    throw LinalgError(os.str());
  }
  return out;
}

double reconstruction_error(const Operator &u, const UnitaryEigen &e) {
  Operator acc = Operator::Zero(u.rows(), u.cols());
  for (const auto &p : e.pairs) acc += std::polar(1.0, p.phase) * p.vec * p.vec.adjoint();
  return max_abs(u - acc);
}

Operator reflection_about(const StateVector &v, double phase, double norm_tol) {
  const double nrm = v.norm();
  if (!(std::abs(nrm - 1.0) <= norm_tol)) {
    std::ostringstream os;
    os << "reflection_about: vector norm " << nrm << " is not 1";
    throw LinalgError(os.str());
  }
  const cplx f = 1.0 - std::polar(1.0, phase);
  return identity(v.size()) - f * (v * v.adjoint());
}

Operator basis_projector(Eigen::Index dim, const std::vector<Eigen::Index> &idx) {
  Operator p = Operator::Zero(dim, dim);
  for (auto i : idx) {
    if (i < 0 || i >= dim) throw LinalgError("basis_projector: index out of range");
    p(i, i) = 1.0;
  }
  return p;
}

Operator prep_from_state(const StateVector &v, double norm_tol) {
  const double nrm = v.norm();
  if (!(std::abs(nrm - 1.0) <= norm_tol)) {
    throw LinalgError("prep_from_state: vector is not normalized");
  }
  const Eigen::Index n = v.size();
  // H = I - 2 w w^dagger maps e0 to v/g with g the phase of v(0).
  const cplx v0 = v(0);
  const cplx g = std::abs(v0) > 0 ? v0 / std::abs(v0) : cplx(1.0, 0.0);
  StateVector w = -v / g;
  w(0) += 1.0;
  const double wn = w.norm();
  Operator h = identity(n);
  if (wn > 1e-300) {
    w /= wn;
    h -= 2.0 * (w * w.adjoint());
  }
  h.col(0) *= g;
  return h;
}

double wrap_pi(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

double wrap_two_pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  if (y >= kTwoPi) y -= kTwoPi;
  return y;
}

std::int64_t round_half_away(double x) {
  return static_cast<std::int64_t>(std::round(x));
}

}  // namespace detwalk
