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

#include "detwalk/fullspace.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace detwalk {

namespace {

Subset full_mask(std::int64_t n) {
  return n >= 64 ? ~Subset{0} : ((Subset{1} << n) - 1);
}

int complement_position(Subset R, int y) {
  const Subset below = y == 0 ? 0 : (R & ((Subset{1} << y) - 1));
  return y - popcount(below);
}

void check_cap(std::int64_t size, std::int64_t cap, const char *what) {
  if (size > cap) {
    std::ostringstream os;
    os << what << ": " << size << " states exceed the cap " << cap;
    throw CapExceeded(os.str());
  }
}

std::int64_t checked_size(std::int64_t n, std::int64_t k, std::int64_t per) {
  const int128 s = binom(n, k) * per;
  if (s > static_cast<int128>(INT64_MAX / 2)) return INT64_MAX / 2;
  return static_cast<std::int64_t>(s);
}

SparseOp from_triplets(std::int64_t dim, std::vector<Triplet> &trip) {
  SparseOp m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

// (|S & K|, |(S + z) & K|) for a one-element K: 0 -> (0,0), 1 -> (0,1), 2 -> (1,1)
int single_mark_class(const VertexWalkBasis &b, std::int64_t i) {
  const auto [S, z] = b.state(i);
  if (S & b.K) return 2;
  return contains(b.K, z) ? 1 : 0;
}

ClassProjector finish_projector(ClassProjector P) {
  P.class_size.assign(P.labels.size(), 0);
  for (int c : P.class_of) {
    if (c >= 0) ++P.class_size[static_cast<std::size_t>(c)];
  }
  std::string empty;
  for (std::size_t c = 0; c < P.labels.size(); ++c) {
    if (P.class_size[c] == 0) empty += (empty.empty() ? "" : " ") + std::string("(") + P.labels[c] + ")";
  }
  if (!empty.empty()) throw ParameterError("empty symmetry classes: " + empty);
  return P;
}

}  // namespace

std::int64_t VertexWalkBasis::index_of(Subset R, int y) const {
  return static_cast<std::int64_t>(lex_rank(R, static_cast<int>(params.N))) * coin_dim() +
         complement_position(R, y);
}

std::pair<Subset, int> VertexWalkBasis::state(std::int64_t i) const {
  const Subset R = subsets[static_cast<std::size_t>(i / coin_dim())];
  const Subset comp = ~R & full_mask(params.N);
  return {R, element_at(comp, static_cast<int>(i % coin_dim()))};
}

std::int64_t EdgeWalkBasis::index_of(Subset R, Subset Rp) const {
  const Subset out = R & ~Rp;
  const Subset in = Rp & ~R;
  if (popcount(out) != 1 || popcount(in) != 1) throw ParameterError("not an edge of J(n, r1)");
  const int x = element_at(out, 0);
  const int xp = element_at(in, 0);
  return static_cast<std::int64_t>(lex_rank(R, static_cast<int>(n))) * block() +
         position_in(R, x) * (n - r1) + complement_position(R, xp);
}

std::pair<Subset, Subset> EdgeWalkBasis::state(std::int64_t i) const {
  const Subset R = subsets[static_cast<std::size_t>(i / block())];
  const std::int64_t rem = i % block();
  const int x = element_at(R, static_cast<int>(rem / (n - r1)));
  const int xp = element_at(~R & full_mask(n), static_cast<int>(rem % (n - r1)));
  return {R, (R & ~(Subset{1} << x)) | (Subset{1} << xp)};
}

VertexWalkBasis enumerate_vertex_basis(const JohnsonParams &p, Subset K, std::int64_t cap) {
  p.validate();
  if (p.N > 63) throw ParameterError("full-space enumeration needs N <= 63");
  if (K & ~full_mask(p.N)) throw ParameterError("special set is not inside [N]");
  check_cap(checked_size(p.N, p.r, p.N - p.r), cap, "vertex walk");
  VertexWalkBasis b;
  b.params = p;
  b.K = K;
  b.subsets = enumerate_subsets(static_cast<int>(p.N), static_cast<int>(p.r));
  return b;
}

EdgeWalkBasis enumerate_edge_basis(std::int64_t n, std::int64_t r1, Subset T, std::int64_t cap) {
  if (r1 < 1 || r1 >= n || n > 63) throw ParameterError("edge walk needs 1 <= r1 < n <= 63");
  if (popcount(T) != 3 || (T & ~full_mask(n))) throw ParameterError("T must be a 3-subset of [n]");
  check_cap(checked_size(n, r1, r1 * (n - r1)), cap, "edge walk");
  EdgeWalkBasis b;
  b.n = n;
  b.r1 = r1;
  b.T = T;
  b.subsets = enumerate_subsets(static_cast<int>(n), static_cast<int>(r1));
  return b;
}

ProductWalkBasis enumerate_product_basis(std::int64_t r1, std::int64_t r2, std::int64_t m,
                                         int marked1, int marked2, std::int64_t cap) {
  if (marked1 < 0 || marked1 >= r1 || marked2 < 0 || marked2 >= r2) {
    throw ParameterError("marked elements must lie in their ground sets");
  }
  const std::int64_t s1 = checked_size(r1, m, r1 - m);
  const std::int64_t s2 = checked_size(r2, m, r2 - m);
  check_cap(s1 * s2, cap, "product walk");
  ProductWalkBasis b;
  b.f1 = enumerate_vertex_basis({r1, m}, Subset{1} << marked1, cap);
  b.f2 = enumerate_vertex_basis({r2, m}, Subset{1} << marked2, cap);
  return b;
}

SparseOp vertex_projector_A(const VertexWalkBasis &b) {
  const std::int64_t c = b.coin_dim();
  const double w = 1.0 / static_cast<double>(c);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.size() * c));
  for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(b.subsets.size()); ++blk) {
    for (std::int64_t i = 0; i < c; ++i) {
      for (std::int64_t j = 0; j < c; ++j) trip.emplace_back(blk * c + i, blk * c + j, w);
    }
  }
  return from_triplets(b.size(), trip);
}

SparseOp vertex_projector_B(const VertexWalkBasis &b) {
  const int N = static_cast<int>(b.params.N);
  const int r = static_cast<int>(b.params.r);
  const double w = 1.0 / static_cast<double>(r + 1);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.size() * (r + 1)));
  std::vector<std::int64_t> members;
  for (Subset Rp : enumerate_subsets(N, r + 1)) {
    members.clear();
    for (int y : elements(Rp)) members.push_back(b.index_of(Rp & ~(Subset{1} << y), y));
    for (auto i : members) {
      for (auto j : members) trip.emplace_back(i, j, w);
    }
  }
  return from_triplets(b.size(), trip);
}

SparseOp full_vertex_step(const VertexWalkBasis &b, double theta1, double theta2) {
  const SparseOp id = sparse_identity(b.size());
  const SparseOp ua = id - (1.0 - std::polar(1.0, theta1)) * vertex_projector_A(b);
  const SparseOp ub = id - (1.0 - std::polar(1.0, theta2)) * vertex_projector_B(b);
  SparseOp u = ub * ua;
  u.prune(cplx(0.0, 0.0), 0.0);
  return u;
}

SparseOp full_edge_coin(const EdgeWalkBasis &b) {
  const std::int64_t d = b.block();
  const double w = 2.0 / static_cast<double>(d);
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.size() * d));
  for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(b.subsets.size()); ++blk) {
    for (std::int64_t i = 0; i < d; ++i) {
      for (std::int64_t j = 0; j < d; ++j) {
        trip.emplace_back(blk * d + i, blk * d + j, (i == j) ? w - 1.0 : w);
      }
    }
  }
  return from_triplets(b.size(), trip);
}

SparseOp full_edge_swap(const EdgeWalkBasis &b) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.size()));
  for (std::int64_t i = 0; i < b.size(); ++i) {
    const auto [R, Rp] = b.state(i);
    trip.emplace_back(b.index_of(Rp, R), i, 1.0);
  }
  return from_triplets(b.size(), trip);
}

SparseOp full_edge_step(const EdgeWalkBasis &b) {
  SparseOp u = full_edge_swap(b) * full_edge_coin(b);
  return u;
}

SparseOp full_product_step(const ProductWalkBasis &b) {
  const SparseOp a1 = vertex_projector_A(b.f1);
  const SparseOp a2 = vertex_projector_A(b.f2);
  const SparseOp b1 = vertex_projector_B(b.f1);
  const SparseOp b2 = vertex_projector_B(b.f2);
  const SparseOp id = sparse_identity(b.size());
  SparseOp pa = Eigen::kroneckerProduct(a1, a2);
  SparseOp pb = Eigen::kroneckerProduct(b1, b2);
  const SparseOp ra = 2.0 * pa - id;
  const SparseOp rb = 2.0 * pb - id;
  SparseOp u = rb * ra;
  u.prune(cplx(0.0, 0.0), 0.0);
  return u;
}

SparseOp vertex_permutation(const VertexWalkBasis &b, const std::vector<int> &perm) {
  if (static_cast<std::int64_t>(perm.size()) != b.params.N) {
    throw ParameterError("permutation has the wrong length");
  }
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(b.size()));
  for (std::int64_t i = 0; i < b.size(); ++i) {
    const auto [R, y] = b.state(i);
    Subset img = 0;
    for (int x : elements(R)) img |= Subset{1} << perm[static_cast<std::size_t>(x)];
    trip.emplace_back(b.index_of(img, perm[static_cast<std::size_t>(y)]), i, 1.0);
  }
  return from_triplets(b.size(), trip);
}

RealMatrix ClassProjector::dense() const {
  RealMatrix p = RealMatrix::Zero(rows(), static_cast<Eigen::Index>(cols()));
  for (std::int64_t i = 0; i < cols(); ++i) {
    const int c = class_of[static_cast<std::size_t>(i)];
    if (c >= 0) p(c, i) = 1.0 / std::sqrt(static_cast<double>(class_size[static_cast<std::size_t>(c)]));
  }
  return p;
}

SparseOp ClassProjector::sparse() const {
  SparseOp p(rows(), cols());
  std::vector<Triplet> trip;
  for (std::int64_t i = 0; i < cols(); ++i) {
    const int c = class_of[static_cast<std::size_t>(i)];
    if (c >= 0) {
      trip.emplace_back(c, i, 1.0 / std::sqrt(static_cast<double>(class_size[static_cast<std::size_t>(c)])));
    }
  }
  p.setFromTriplets(trip.begin(), trip.end());
  return p;
}

ClassProjector class_projector(const VertexWalkBasis &b) {
  if (popcount(b.K) != 2) throw ParameterError("vertex-walk classes need |K| = 2");
  ClassProjector P;
  P.labels = {"0,0", "0,1", "1,0", "1,1", "2,0"};
  P.class_of.resize(static_cast<std::size_t>(b.size()));
  for (std::int64_t i = 0; i < b.size(); ++i) {
    const auto [R, y] = b.state(i);
    P.class_of[static_cast<std::size_t>(i)] = vertex5_index(popcount(R & b.K), contains(b.K, y) ? 1 : 0);
  }
  return finish_projector(std::move(P));
}

ClassProjector class_projector(const EdgeWalkBasis &b) {
  static const std::array<std::pair<int, int>, 10> order = {
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}};
  ClassProjector P;
  for (auto [a, c] : order) P.labels.push_back(std::to_string(a) + "," + std::to_string(c));
  P.class_of.resize(static_cast<std::size_t>(b.size()));
  for (std::int64_t i = 0; i < b.size(); ++i) {
    const auto [R, Rp] = b.state(i);
    const std::pair<int, int> key{popcount(R & b.T), popcount(Rp & b.T)};
    int idx = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (order[k] == key) idx = static_cast<int>(k);
    }
    P.class_of[static_cast<std::size_t>(i)] = idx;
  }
  return finish_projector(std::move(P));
}

ClassProjector class_projector(const ProductWalkBasis &b) {
  // (c1, c2) in the reduced basis order
  static const std::array<std::pair<int, int>, 9> order = {
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}}};
  ClassProjector P;
  P.labels = {"(0,0)-(0,0)", "(0,0)-(1,0)", "(0,0)-(0,1)", "(0,0)-(1,1)", "(1,0)-(1,0)",
              "(1,0)-(1,1)", "(0,1)-(0,1)", "(0,1)-(1,1)", "(1,1)-(1,1)"};
  std::vector<int> c1(static_cast<std::size_t>(b.f1.size()));
  std::vector<int> c2(static_cast<std::size_t>(b.f2.size()));
  for (std::int64_t i = 0; i < b.f1.size(); ++i) c1[static_cast<std::size_t>(i)] = single_mark_class(b.f1, i);
  for (std::int64_t i = 0; i < b.f2.size(); ++i) c2[static_cast<std::size_t>(i)] = single_mark_class(b.f2, i);
  int lookup[3][3];
  for (std::size_t k = 0; k < order.size(); ++k) lookup[order[k].first][order[k].second] = static_cast<int>(k);
  P.class_of.resize(static_cast<std::size_t>(b.size()));
  for (std::int64_t i1 = 0; i1 < b.f1.size(); ++i1) {
    for (std::int64_t i2 = 0; i2 < b.f2.size(); ++i2) {
      P.class_of[static_cast<std::size_t>(i1 * b.f2.size() + i2)] =
          lookup[c1[static_cast<std::size_t>(i1)]][c2[static_cast<std::size_t>(i2)]];
    }
  }
  return finish_projector(std::move(P));
}

namespace {

ReductionReport compare(const Operator &X, const Operator &Y, const RealMatrix &Pd,
                        const Operator &reduced, double tol) {
  ReductionReport rep;
  const Operator proj = Pd.cast<cplx>() * Y;
  if (proj.rows() != reduced.rows() || proj.cols() != reduced.cols()) {
    throw ParameterError("verify_reduction: reduced operator has the wrong dimension");
  }
  rep.maxdev = max_abs(proj - reduced);
  rep.leakage = max_abs(Y - X * proj);
  rep.pass = rep.maxdev <= tol && rep.leakage <= tol;
  return rep;
}

}  // namespace

ReductionReport verify_reduction(const SparseOp &full, const ClassProjector &P,
                                 const Operator &reduced, double tol) {
  if (full.rows() != P.cols() || full.cols() != P.cols()) {
    throw ParameterError("verify_reduction: projector and operator dimensions differ");
  }
  const RealMatrix Pd = P.dense();
  const Operator X = Pd.transpose().cast<cplx>();
  const Operator Y = kernels::apply_block(full, X);
  return compare(X, Y, Pd, reduced, tol);
}

ReductionReport verify_reduction(const Operator &full, const ClassProjector &P,
                                 const Operator &reduced, double tol) {
  if (full.rows() != P.cols() || full.cols() != P.cols()) {
    throw ParameterError("verify_reduction: projector and operator dimensions differ");
  }
  const RealMatrix Pd = P.dense();
  const Operator X = Pd.transpose().cast<cplx>();
  const Operator Y = full * X;
  return compare(X, Y, Pd, reduced, tol);
}

RealVector project_uniform(const ClassProjector &P) {
  RealVector v = RealVector::Zero(P.rows());
  const double amp = 1.0 / std::sqrt(static_cast<double>(P.cols()));
  for (std::int64_t i = 0; i < P.cols(); ++i) {
    const int c = P.class_of[static_cast<std::size_t>(i)];
    if (c >= 0) v(c) += amp / std::sqrt(static_cast<double>(P.class_size[static_cast<std::size_t>(c)]));
  }
  return v;
}

}  // namespace detwalk
