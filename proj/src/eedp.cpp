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

#include "detwalk/eedp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/SVD>

namespace detwalk {

std::pair<double, double> eedp_principal_angles(const ReducedWalk &w) {
  if (w.kind != WalkKind::vertex5) throw ParameterError("eedp needs the vertex-walk space");
  Eigen::JacobiSVD<RealMatrix> svd(w.A.transpose() * w.B);
  RealVector s = svd.singularValues();  // descending; s(0) belongs to psi0
  std::vector<double> v(s.data(), s.data() + s.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  const double small = std::acos(std::clamp(v[1], -1.0, 1.0));
  const double big = std::acos(std::clamp(v[2], -1.0, 1.0));
  return {small, big};
}

double eedp_residual(const ReducedWalk &w, double theta1, double theta2, int t, double beta) {
  const Operator ut = mat_power(vertexwalk_step(w, theta1, theta2), static_cast<std::uint64_t>(t));
  const Operator ref = std::polar(1.0, beta) * reflection_about(w.psi0_complex(), beta);
  return max_abs(ut - ref);
}

namespace {

// cos(omega_k) = cos(theta) sin^2(phi_k) + cos(sigma) cos^2(phi_k), with
// theta1 = sigma + theta and theta2 = sigma - theta; omega_k t = 2 pi n_k.
std::optional<EedpSolution> candidate(const ReducedWalk &w, double phi_small, double phi_big, int t,
                                      int n_small, int n_big, double tol) {
  const double ss = std::sin(phi_small), cs = std::cos(phi_small);
  const double sb = std::sin(phi_big), cb = std::cos(phi_big);
  Eigen::Matrix2d m;
  m << ss * ss, cs * cs, sb * sb, cb * cb;
  const Eigen::Vector2d rhs(std::cos(kTwoPi * n_small / t), std::cos(kTwoPi * n_big / t));
  const double det = m.determinant();
  if (std::abs(det) < 1e-14) return std::nullopt;
  const Eigen::Vector2d xy = m.inverse() * rhs;
  if (std::abs(xy(0)) > 1.0 || std::abs(xy(1)) > 1.0) return std::nullopt;
  const double theta = std::acos(xy(0));
  const double sigma = std::acos(xy(1));
  const double beta = wrap_two_pi(t * sigma);
  if (std::abs(wrap_pi(beta)) < 1e-9) return std::nullopt;

  EedpSolution s;
  s.theta1 = sigma + theta;
  s.theta2 = sigma - theta;
  s.t = t;
  s.beta = beta;
  s.winding_small = n_small;
  s.winding_big = n_big;
  s.residual = eedp_residual(w, s.theta1, s.theta2, t, beta);
  s.beta_relation_residual = std::abs(wrap_pi(beta - t * (s.theta1 + s.theta2) / 2.0));
  if (!(s.residual <= tol)) return std::nullopt;
  return s;
}

int t_bound(const JohnsonParams &p, double mult) {
  return static_cast<int>(std::ceil(mult * std::sqrt(static_cast<double>(p.r))));
}

}  // namespace

EedpSolution solve_eedp(const JohnsonParams &p, const MarkedClass &target, const EedpOptions &opt) {
  const ReducedWalk w = build_vertexwalk_5d(p, target);
  const auto [phs, phb] = eedp_principal_angles(w);
  const int tmax = t_bound(p, opt.t_multiplier);
  const int tmin = std::max(2, 2 * std::max(opt.winding_small, opt.winding_big));
  for (int t = tmin; t <= tmax; ++t) {
    if (auto s = candidate(w, phs, phb, t, opt.winding_small, opt.winding_big, opt.tol)) return *s;
  }
  std::ostringstream os;
  os << "solve_eedp: no solution with windings (" << opt.winding_small << "," << opt.winding_big
     << ") and t <= " << tmax << " at N=" << p.N << " r=" << p.r;
  throw SearchError(os.str());
}

std::vector<EedpSolution> enumerate_eedp(const JohnsonParams &p, const MarkedClass &target,
                                         const EedpOptions &opt) {
  const ReducedWalk w = build_vertexwalk_5d(p, target);
  const auto [phs, phb] = eedp_principal_angles(w);
  const int tmax = t_bound(p, opt.t_multiplier);
  std::vector<EedpSolution> out;
  for (int t = 2; t <= tmax; ++t) {
    const int wmax = std::min(opt.max_winding, t / 2);
    for (int ns = 0; ns <= wmax; ++ns) {
      for (int nb = 0; nb <= wmax; ++nb) {
        if (auto s = candidate(w, phs, phb, t, ns, nb, opt.tol)) out.push_back(*s);
      }
    }
  }
  return out;
}

}  // namespace detwalk
