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

#include "detwalk/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace detwalk {

std::string to_string(Scheme s) { return s == Scheme::long_phase ? "long" : "fixed_beta"; }

double k_opt(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw SearchError("k_opt: lambda must lie in (0, 1]");
  return kPi / (4.0 * std::asin(std::sqrt(lambda))) - 0.5;
}

int min_long_k(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw SearchError("lambda must lie in (0, 1]");
  if (lambda == 1.0) return 0;
  int k = std::max(1, static_cast<int>(std::ceil(k_opt(lambda) - 1e-12)));
  while (std::sin(kPi / (4.0 * k + 2.0)) > std::sqrt(lambda) * (1.0 + 1e-15)) ++k;
  return k;
}

SearchPlan long_params(double lambda, int k) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw SearchError("long_params: lambda must lie in (0, 1]");
  if (k < 0) throw SearchError("long_params: k must be non-negative");
  SearchPlan p;
  p.scheme = Scheme::long_phase;
  p.lambda = lambda;
  p.k = k;
  if (k == 0) {
    if (lambda != 1.0) throw SearchError("long_params: k = 0 only reaches the target when lambda = 1", -1.0, min_long_k(lambda));
    return p;
  }
  const double s = std::sin(kPi / (4.0 * k + 2.0)) / std::sqrt(lambda);
  if (s > 1.0 + 1e-14) {
    std::ostringstream os;
    os << "long_params: k=" << k << " is too small for lambda=" << lambda << " (need k >= "
       << min_long_k(lambda) << ")";
    throw SearchError(os.str(), -1.0, min_long_k(lambda));
  }
  p.alpha1 = p.alpha2 = 2.0 * std::asin(std::min(1.0, s));
  p.beta = -p.alpha1;
  p.residual = std::abs(run_two_dim(p)(1));
  return p;
}

double k_lower(double lambda, double beta) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw SearchError("k_lower: lambda must lie in (0, 1]");
  if (!(beta > 0.0 && beta < kTwoPi)) throw SearchError("k_lower: beta must lie in (0, 2 pi)");
  const double x = 4.0 * std::asin(std::min(1.0, std::sqrt(lambda) * std::sin(beta / 2.0)));
  const double red = x - kPi * std::round(x / kPi);
  if (std::abs(red) < 1e-12) {
    std::ostringstream os;
    os << "k_lower: resonant point lambda=" << lambda << " beta=" << beta
       << " (reduced angle vanishes)";
    throw SearchError(os.str());
  }
  return kPi / std::abs(red);
}

int default_fixed_beta_k(double lambda, double beta) {
  return std::max(1, static_cast<int>(std::ceil(k_lower(lambda, beta) - 1e-9)));
}

namespace {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

Vec2 two_dim_psi(double lambda) { return Vec2(std::sqrt(lambda), std::sqrt(1.0 - lambda)); }

Mat2 grover2(double lambda, double alpha, double beta) {
  const Vec2 psi = two_dim_psi(lambda);
  Mat2 sp = Mat2::Identity() - (1.0 - std::polar(1.0, -beta)) * (psi * psi.adjoint());
  Mat2 sm = Mat2::Identity();
  sm(0, 0) = std::polar(1.0, alpha);
  return sp * sm;
}

Mat2 pow2(Mat2 base, int k) {
  Mat2 acc = Mat2::Identity();
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

cplx pair_residual(double lambda, double beta, int k, double a1, double a2) {
  const Mat2 g = grover2(lambda, a1, beta) * grover2(lambda, a2, beta);
  return (pow2(g, k) * two_dim_psi(lambda))(1);
}

struct PairResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  double lambda, beta;
  int k;
  bool equal;

  int inputs() const { return equal ? 1 : 2; }
  int values() const { return 2; }
  int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
    const cplx r = pair_residual(lambda, beta, k, x(0), equal ? x(0) : x(1));
    f(0) = r.real();
    f(1) = r.imag();
    return 0;
  }
};

}  // namespace

SearchPlan fixed_beta_params(double lambda, double beta, int k, const FixedBetaOptions &opt) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw SearchError("fixed_beta_params: lambda must lie in (0, 1]");
  SearchPlan plan;
  plan.scheme = Scheme::fixed_beta;
  plan.lambda = lambda;
  plan.beta = beta;
  if (lambda == 1.0) {
    plan.k = 0;
    return plan;
  }
  if (!(beta > 0.0 && beta < kTwoPi)) throw SearchError("fixed_beta_params: beta must lie in (0, 2 pi)");
  // equal angles is a one-parameter probe, the k_lower bound does not apply
  const double kl = opt.equal_angles ? 0.0 : k_lower(lambda, beta);
  if (k < 1 || k + 1e-9 < kl) {
    std::ostringstream os;
    os << "fixed_beta_params: k=" << k << " is below k_lower=" << kl;
    throw SearchError(os.str(), -1.0, default_fixed_beta_k(lambda, beta));
  }
  plan.k = k;

  PairResidual fn{{}, {}, {}, {}};
  fn.lambda = lambda;
  fn.beta = beta;
  fn.k = k;
  fn.equal = opt.equal_angles;
  Eigen::NumericalDiff<PairResidual, Eigen::Central> nd(fn);
  double best = INFINITY;
  Eigen::Vector2d best_x(0.0, 0.0);

  // coarse grid, then Levenberg-Marquardt from the best seeds; a denser
  // grid is tried when the first pass misses a narrow basin
  for (int pass = 0; pass < 2 && best > 1e-13; ++pass) {
    const int g = std::max(4, opt.grid) * (pass == 0 ? 1 : 4);
    std::vector<std::pair<double, Eigen::Vector2d>> seeds;
    for (int i = 0; i < g; ++i) {
      const double a1 = -kPi + kTwoPi * (i + 0.5) / g;
      for (int j = 0; j < (opt.equal_angles ? 1 : g); ++j) {
        const double a2 = opt.equal_angles ? a1 : -kPi + kTwoPi * (j + 0.5) / g;
        seeds.push_back({std::abs(pair_residual(lambda, beta, k, a1, a2)), Eigen::Vector2d(a1, a2)});
      }
    }
    std::sort(seeds.begin(), seeds.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    const int nseed = std::min<int>(opt.refine_seeds * (pass == 0 ? 1 : 4), static_cast<int>(seeds.size()));
    for (int s = 0; s < nseed && best > 1e-15; ++s) {
      Eigen::VectorXd x(fn.inputs());
      x(0) = seeds[static_cast<std::size_t>(s)].second(0);
      if (!opt.equal_angles) x(1) = seeds[static_cast<std::size_t>(s)].second(1);
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<PairResidual, Eigen::Central>> lm(nd);
      lm.parameters.xtol = 1e-15;
      lm.parameters.ftol = 1e-30;
      lm.parameters.maxfev = 2000;
      lm.minimize(x);
      const double a1 = x(0);
      const double a2 = opt.equal_angles ? x(0) : x(1);
      const double res = std::abs(pair_residual(lambda, beta, k, a1, a2));
      if (res < best) {
        best = res;
        best_x = Eigen::Vector2d(a1, a2);
      }
    }
  }
  plan.alpha1 = wrap_pi(best_x(0));
  plan.alpha2 = wrap_pi(best_x(1));
  plan.residual = std::abs(run_two_dim(plan)(1));
  // |<t|final>| = sqrt(1 - residual^2) >= 1 - tol
  if (!(plan.residual * plan.residual / 2.0 <= opt.tol) || !(plan.residual <= std::sqrt(opt.tol))) {
    std::ostringstream os;
    os << "fixed_beta_params: no solution at lambda=" << lambda << " beta=" << beta << " k=" << k
       << " (best residual " << plan.residual << ")";
    throw SearchError(os.str(), plan.residual);
  }
  return plan;
}

SearchPlan fixed_beta_params(double lambda, double beta, const FixedBetaOptions &opt) {
  if (lambda == 1.0) return fixed_beta_params(lambda, beta, 0, opt);
  return fixed_beta_params(lambda, beta, default_fixed_beta_k(lambda, beta), opt);
}

StateVector run_two_dim(const SearchPlan &plan) {
  Operator prep(2, 2);
  const double a = std::sqrt(plan.lambda);
  const double b = std::sqrt(std::max(0.0, 1.0 - plan.lambda));
  prep << a, -b, b, a;
  return run_search(prep, std::vector<int>{0}, plan);
}

namespace {

Operator marked_phase(Eigen::Index dim, const std::vector<int> &marked, double alpha) {
  Operator s = identity(dim);
  for (int i : marked) {
    if (i < 0 || i >= dim) throw SearchError("marked index outside the space");
    s(i, i) = std::polar(1.0, alpha);
  }
  return s;
}

}  // namespace

StateVector run_search_with(const StateVector &start, const Operator &s_psi,
                            const std::vector<int> &marked, const SearchPlan &plan) {
  if (s_psi.rows() != start.size() || s_psi.cols() != start.size()) {
    throw SearchError("run_search: plan and operator dimensions differ");
  }
  const Eigen::Index d = start.size();
  StateVector v = start;
  if (plan.scheme == Scheme::long_phase) {
    const Operator g = s_psi * marked_phase(d, marked, plan.alpha1);
    for (int i = 0; i < plan.k; ++i) v = g * v;
  } else {
    const Operator g = s_psi * marked_phase(d, marked, plan.alpha1) * s_psi *
                       marked_phase(d, marked, plan.alpha2);
    for (int i = 0; i < plan.k; ++i) v = g * v;
  }
  return v;
}

StateVector run_search(const Operator &prep, const std::vector<int> &marked, const SearchPlan &plan) {
  if (prep.rows() != prep.cols()) throw SearchError("run_search: prep is not square");
  const StateVector start = prep.col(0);
  Operator s0 = identity(prep.rows());
  s0(0, 0) = std::polar(1.0, -plan.beta);
  const Operator s_psi = prep * s0 * prep.adjoint();
  return run_search_with(start, s_psi, marked, plan);
}

StateVector run_search(const Operator &prep, int target_index, const SearchPlan &plan) {
  return run_search(prep, std::vector<int>{target_index}, plan);
}

double target_fidelity(const StateVector &v, const std::vector<int> &marked) {
  double acc = 0.0;
  for (int i : marked) acc += std::norm(v(i));
  return std::sqrt(acc);
}

double mass_outside(const StateVector &v, const std::vector<int> &marked) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::find(marked.begin(), marked.end(), static_cast<int>(i)) == marked.end()) acc += std::norm(v(i));
  }
  return acc;
}

Operator amplification_operator(const Operator &step, const Operator &check, int t1, int t2) {
  if (t1 < 0 || t2 < 0) throw SearchError("iteration counts must be non-negative");
  return mat_power(mat_power(step, static_cast<std::uint64_t>(t1)) * check, static_cast<std::uint64_t>(t2));
}

double exact_success_amplitude(const Operator &step, const Operator &check, const StateVector &psi0,
                               int target_index, int t1, int t2) {
  if (step.rows() != psi0.size() || check.rows() != psi0.size()) {
    throw SearchError("exact_success_amplitude: dimension mismatch");
  }
  const StateVector v = amplification_operator(step, check, t1, t2) * psi0;
  return std::abs(v(target_index));
}

EigenOverlapReport eigen_overlap_report(const Operator &step_check, const StateVector &psi0,
                                        int target_index) {
  const UnitaryEigen e = eig_unitary(step_check);
  EigenOverlapReport rep;
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < e.pairs.size(); ++i) {
    rep.spectrum.push_back(e.pairs[i].phase);
    order.push_back({std::norm(e.pairs[i].vec.dot(psi0)), i});
  }
  std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) { return a.first > b.first; });
  if (order.size() < 2 || order[0].first + order[1].first < 0.5) {
    std::ostringstream os;
    os << "eigen_overlap_report: no dominant eigenpair; spectrum:";
    for (double p : rep.spectrum) os << " " << p;
    throw SearchError(os.str());
  }
  std::size_t ip = order[0].second, im = order[1].second;
  if (e.pairs[ip].phase < e.pairs[im].phase) std::swap(ip, im);
  const auto &vp = e.pairs[ip].vec;
  const auto &vm = e.pairs[im].vec;
  rep.phase_plus = e.pairs[ip].phase;
  rep.phase_minus = e.pairs[im].phase;
  rep.theta = 0.5 * (std::abs(rep.phase_plus) + std::abs(rep.phase_minus));
  rep.pair_asymmetry = std::abs(rep.phase_plus + rep.phase_minus);
  rep.target_overlap_plus = std::abs(vp(target_index));
  rep.target_overlap_minus = std::abs(vm(target_index));
  rep.psi_overlap_plus = std::abs(vp.dot(psi0));
  rep.psi_overlap_minus = std::abs(vm.dot(psi0));
  rep.residual_mass = std::clamp(1.0 - order[0].first - order[1].first, 0.0, 1.0);
  return rep;
}

}  // namespace detwalk
