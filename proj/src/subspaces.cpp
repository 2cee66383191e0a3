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

#include "detwalk/subspaces.hpp"

#include <cmath>
#include <sstream>

#include "detwalk/combinatorics.hpp"

namespace detwalk {

namespace {

std::string pair_label(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

[[noreturn]] void fail(const std::string &what) { throw ParameterError(what); }

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t acc = 1;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

}  // namespace

void JohnsonParams::validate() const {
  if (r < 1 || r > N - 2) {
    std::ostringstream os;
    os << "J(N,r) needs 1 <= r <= N-2, got N=" << N << " r=" << r;
    fail(os.str());
  }
}

void LayerParams::validate() const {
  if (m < 1 || r1 < 1 || r2 < 1) fail("layer sizes must be positive");
  if (m > std::min(r1, r2) - 2) fail("layer sizes need m <= min(r1, r2) - 2");
  if (r1 + r2 + 2 > n) fail("layer sizes need r1 + r2 + 2 <= n");
}

std::optional<std::int64_t> LayerParams::seventh_root(std::int64_t n) {
  if (n < 1) return std::nullopt;
  const auto j0 = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / 7.0)));
  for (std::int64_t j = std::max<std::int64_t>(1, j0 - 1); j <= j0 + 1; ++j) {
    if (ipow(j, 7) == n) return j;
  }
  return std::nullopt;
}

LayerParams LayerParams::from_n(std::int64_t n, bool allow_rounding) {
  LayerParams p;
  p.n = n;
  if (auto j = seventh_root(n)) {
    p.r1 = ipow(*j, 4);
    p.r2 = ipow(*j, 5);
    p.m = ipow(*j, 3);
  } else if (allow_rounding) {
    const double x = static_cast<double>(n);
    p.r1 = round_half_away(std::pow(x, 4.0 / 7.0));
    p.r2 = round_half_away(std::pow(x, 5.0 / 7.0));
    p.m = round_half_away(std::pow(x, 3.0 / 7.0));
  } else {
    fail("n=" + std::to_string(n) + " is not a seventh power (enable rounding to allow it)");
  }
  p.validate();
  return p;
}

void MarkedClass::validate() const {
  const bool ok = (l0 == 0 && j0 >= 0 && j0 <= 2) || (l0 == 1 && (j0 == 0 || j0 == 1));
  if (!ok) fail("marked class (" + pair_label(j0, l0) + ") is not one of the five vertex-walk classes");
}

double orthonormality_defect(const RealMatrix &a) {
  const RealMatrix g = a.transpose() * a - RealMatrix::Identity(a.cols(), a.cols());
  return g.cwiseAbs().maxCoeff();
}

int vertex5_index(int j, int l) {
  MarkedClass{j, l}.validate();
  if (l == 0) return j == 0 ? 0 : (j == 1 ? 2 : 4);
  return j == 0 ? 1 : 3;
}

ReducedWalk build_vertexwalk_5d(const JohnsonParams &p, const MarkedClass &target) {
  p.validate();
  target.validate();
  const double N = static_cast<double>(p.N);
  const double r = static_cast<double>(p.r);
  const double c = N - r;

  ReducedWalk w;
  w.kind = WalkKind::vertex5;
  w.basis_labels = {pair_label(0, 0), pair_label(0, 1), pair_label(1, 0), pair_label(1, 1),
                    pair_label(2, 0)};
  RealMatrix a2 = RealMatrix::Zero(5, 3);
  a2(0, 0) = 1.0 - 2.0 / c;
  a2(1, 0) = 2.0 / c;
  a2(2, 1) = 1.0 - 1.0 / c;
  a2(3, 1) = 1.0 / c;
  a2(4, 2) = 1.0;
  RealMatrix b2 = RealMatrix::Zero(5, 3);
  b2(0, 0) = 1.0;
  b2(1, 1) = 1.0 / (r + 1.0);
  b2(2, 1) = r / (r + 1.0);
  b2(3, 2) = 2.0 / (r + 1.0);
  b2(4, 2) = 1.0 - 2.0 / (r + 1.0);
  w.A = a2.cwiseSqrt();
  w.B = b2.cwiseSqrt();

  const auto num = vertex5_psi0_numerators(p.N, p.r);
  const double den = N * (N - 1.0);
  w.psi0 = RealVector(5);
  for (int i = 0; i < 5; ++i) w.psi0(i) = std::sqrt(to_double(num[static_cast<std::size_t>(i)]) / den);
  w.target_index = vertex5_index(target.j0, target.l0);
  w.epsilon = w.psi0(w.target_index) * w.psi0(w.target_index);
  w.sizes = {{"N", p.N}, {"r", p.r}};
  return w;
}

Operator vertexwalk_step(const ReducedWalk &w, double theta1, double theta2) {
  if (w.kind != WalkKind::vertex5) fail("vertexwalk_step needs a vertex-walk space");
  const Operator a = w.A.cast<cplx>();
  const Operator b = w.B.cast<cplx>();
  const Operator id = identity(w.dim());
  const Operator ua = id - (1.0 - std::polar(1.0, theta1)) * (a * a.adjoint());
  const Operator ub = id - (1.0 - std::polar(1.0, theta2)) * (b * b.adjoint());
  return ub * ua;
}

ReducedWalk build_layer1_10d(std::int64_t n, std::int64_t r1) {
  if (r1 < 4 || n < r1 + 4) {
    std::ostringstream os;
    os << "layer-1 space needs r1 >= 4 and n >= r1 + 4, got n=" << n << " r1=" << r1;
    fail(os.str());
  }
  const double nn = static_cast<double>(n);
  const double r = static_cast<double>(r1);
  const double c = nn - r;
  const double d = r * c;

  ReducedWalk w;
  w.kind = WalkKind::layer1;
  w.basis_labels = {pair_label(0, 0), pair_label(0, 1), pair_label(1, 0), pair_label(1, 1),
                    pair_label(1, 2), pair_label(2, 1), pair_label(2, 2), pair_label(2, 3),
                    pair_label(3, 2), pair_label(3, 3)};
  RealMatrix a2 = RealMatrix::Zero(10, 4);
  a2(0, 0) = 1.0 - 3.0 / c;
  a2(1, 0) = 3.0 / c;
  a2(2, 1) = (c - 2.0) / d;
  a2(3, 1) = ((r - 1.0) * (c - 2.0) + 2.0) / d;
  a2(4, 1) = 2.0 * (r - 1.0) / d;
  a2(5, 2) = 2.0 * (c - 1.0) / d;
  a2(6, 2) = ((r - 2.0) * (c - 1.0) + 2.0) / d;
  a2(7, 2) = (r - 2.0) / d;
  a2(8, 3) = 3.0 / r;
  a2(9, 3) = 1.0 - 3.0 / r;
  w.A = a2.cwiseSqrt();

  RealMatrix s = RealMatrix::Zero(10, 10);
  for (int i : {0, 3, 6, 9}) s(i, i) = 1.0;
  for (auto [i, j] : {std::pair{1, 2}, std::pair{4, 5}, std::pair{7, 8}}) {
    s(i, j) = 1.0;
    s(j, i) = 1.0;
  }
  w.swapS = s;

  const auto num = layer1_psi0_numerators(n, r1);
  const int128 den = static_cast<int128>(n) * (n - 1) * (n - 2);
  w.psi0 = RealVector(10);
  for (int i = 0; i < 10; ++i) w.psi0(i) = std::sqrt(to_double(num[static_cast<std::size_t>(i)]) / to_double(den));
  w.target_index = 3;
  w.epsilon = w.psi0(3) * w.psi0(3);
  w.sizes = {{"n", n}, {"r1", r1}};
  return w;
}

Operator edgewalk_step(const ReducedWalk &w) {
  if (w.kind != WalkKind::layer1 || !w.swapS) fail("edgewalk_step needs the layer-1 space");
  const RealMatrix id = RealMatrix::Identity(w.dim(), w.dim());
  const RealMatrix coin = 2.0 * w.A * w.A.transpose() - id;
  return (*w.swapS * coin).cast<cplx>();
}

ReducedWalk build_layer4_9d(std::int64_t r1, std::int64_t r2, std::int64_t m) {
  if (m < 1 || m > std::min(r1, r2) - 2) {
    std::ostringstream os;
    os << "layer-4 space needs 1 <= m <= min(r1, r2) - 2, got r1=" << r1 << " r2=" << r2
       << " m=" << m;
    fail(os.str());
  }
  const double e1 = 1.0 / static_cast<double>(r1 - m);
  const double e2 = 1.0 / static_cast<double>(r2 - m);
  const double md = static_cast<double>(m);
  const double q = 1.0 / (md + 1.0);

  ReducedWalk w;
  w.kind = WalkKind::layer4;
  w.basis_labels = {"(0,0)-(0,0)", "(0,0)-(1,0)", "(0,0)-(0,1)", "(0,0)-(1,1)", "(1,0)-(1,0)",
                    "(1,0)-(1,1)", "(0,1)-(0,1)", "(0,1)-(1,1)", "(1,1)-(1,1)"};
  RealMatrix a2 = RealMatrix::Zero(9, 4);
  a2(0, 0) = (1.0 - e1) * (1.0 - e2);
  a2(1, 0) = e1 * (1.0 - e2);
  a2(2, 0) = (1.0 - e1) * e2;
  a2(3, 0) = e1 * e2;
  a2(4, 1) = 1.0 - e2;
  a2(5, 1) = e2;
  a2(6, 2) = 1.0 - e1;
  a2(7, 2) = e1;
  a2(8, 3) = 1.0;
  RealMatrix b2 = RealMatrix::Zero(9, 4);
  b2(0, 0) = 1.0;
  b2(1, 1) = q;
  b2(4, 1) = md * q;
  b2(2, 2) = q;
  b2(6, 2) = md * q;
  b2(3, 3) = q * q;
  b2(5, 3) = md * q * q;
  b2(7, 3) = md * q * q;
  b2(8, 3) = md * md * q * q;
  w.A = a2.cwiseSqrt();
  w.B = b2.cwiseSqrt();

  const int128 a = r1 - m - 1, b = r2 - m - 1, mm = m;
  const int128 num[9] = {a * b, b, a, 1, mm * b, mm, a * mm, mm, mm * mm};
  const double den = static_cast<double>(r1) * static_cast<double>(r2);
  w.psi0 = RealVector(9);
  for (int i = 0; i < 9; ++i) w.psi0(i) = std::sqrt(to_double(num[i]) / den);
  w.target_index = 8;
  w.epsilon = w.psi0(8) * w.psi0(8);
  w.sizes = {{"r1", r1}, {"r2", r2}, {"m", m}};
  return w;
}

Operator product_walk_step(const ReducedWalk &w) {
  if (w.kind != WalkKind::layer4) fail("product_walk_step needs the layer-4 space");
  const RealMatrix id = RealMatrix::Identity(w.dim(), w.dim());
  const RealMatrix ra = 2.0 * w.A * w.A.transpose() - id;
  const RealMatrix rb = 2.0 * w.B * w.B.transpose() - id;
  return (rb * ra).cast<cplx>();
}

double marked_fraction(const ReducedWalk &w) {
  const double x = w.psi0(w.target_index);
  return x * x;
}

double epsilon_vertex_10(std::int64_t N, std::int64_t r) {
  return 2.0 * static_cast<double>(r) * static_cast<double>(N - r - 1) /
         (static_cast<double>(N) * static_cast<double>(N - 1));
}

double epsilon_layer1(std::int64_t n, std::int64_t r1) {
  const int128 num = 3 * static_cast<int128>(n - r1 - 1) * ((r1 - 1) * static_cast<int128>(n - r1 - 2) + 2);
  const int128 den = static_cast<int128>(n) * (n - 1) * (n - 2);
  return to_double(num) / to_double(den);
}

double epsilon_layer4(std::int64_t r1, std::int64_t r2, std::int64_t m) {
  return static_cast<double>(m) * static_cast<double>(m) /
         (static_cast<double>(r1) * static_cast<double>(r2));
}

}  // namespace detwalk
