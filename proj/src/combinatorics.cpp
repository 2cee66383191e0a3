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

#include "detwalk/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace detwalk {

int128 binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  const int128 lim = std::numeric_limits<int128>::max() / 2;
  int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step
    const int128 mul = n - k + i;
    if (acc > lim / mul) throw std::overflow_error("binom: overflow");
    acc = acc * mul / i;
  }
  return acc;
}

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

double to_double(int128 v) { return static_cast<double>(v); }

int popcount(Subset s) { return std::popcount(s); }

std::vector<int> elements(Subset s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(s)));
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

Subset from_elements(const std::vector<int> &elts) {
  Subset s = 0;
  for (int x : elts) {
    if (x < 0 || x >= 64) throw std::out_of_range("from_elements: element outside [0, 64)");
    s |= Subset{1} << x;
  }
  return s;
}

bool contains(Subset s, int x) { return x >= 0 && x < 64 && ((s >> x) & 1U); }

std::vector<Subset> enumerate_subsets(int n, int k) {
  if (n < 0 || n > 64 || k < 0 || k > n) throw std::invalid_argument("enumerate_subsets: bad sizes");
  std::vector<Subset> out;
  out.reserve(static_cast<std::size_t>(binom(n, k)));
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    Subset s = 0;
    for (int x : c) s |= Subset{1} << x;
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::uint64_t lex_rank(Subset s, int n) {
  const int k = std::popcount(s);
  // lex rank = C(n,k) - 1 - sum_i C(n-1-c_i, k-i)
  int128 acc = 0;
  int i = 0;
  for (int c : elements(s)) {
    acc += binom(n - 1 - c, k - i);
    ++i;
  }
  return static_cast<std::uint64_t>(binom(n, k) - 1 - acc);
}

Subset lex_unrank(std::uint64_t rank, int n, int k) {
  if (static_cast<int128>(rank) >= binom(n, k)) throw std::out_of_range("lex_unrank: rank too large");
  Subset s = 0;
  int next = 0;
  for (int i = 0; i < k; ++i) {
    for (int c = next;; ++c) {
      const auto block = static_cast<std::uint64_t>(binom(n - 1 - c, k - i - 1));
      if (rank < block) {
        s |= Subset{1} << c;
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return s;
}

int position_in(Subset s, int x) {
  if (!contains(s, x)) return -1;
  const Subset below = x == 0 ? 0 : (s & ((Subset{1} << x) - 1));
  return std::popcount(below);
}

int element_at(Subset s, int i) {
  for (int j = 0; j < i; ++j) s &= s - 1;
  if (!s) throw std::out_of_range("element_at: index too large");
  return std::countr_zero(s);
}

VertexClassCount vertex_class_count(std::int64_t N, std::int64_t r, int j, int l) {
  VertexClassCount c{0, 0};
  if (l == 0) {
    c.by_pairs = binom(2, j) * binom(N - 2, r - j) * (N - 2 - r + j);
    c.by_supersets = binom(2, j) * binom(N - 2, r + 1 - j) * (r + 1 - j);
  } else if (l == 1) {
    c.by_pairs = binom(2, j) * binom(N - 2, r - j) * (2 - j);
    c.by_supersets = binom(2, j + 1) * binom(N - 2, r - j) * (j + 1);
  } else {
    throw std::invalid_argument("vertex_class_count: l must be 0 or 1");
  }
  return c;
}

std::array<int128, 5> vertex5_psi0_numerators(std::int64_t N, std::int64_t r) {
  const int128 c = N - r;
  return {(c - 1) * (c - 2), 2 * (c - 1), 2 * static_cast<int128>(r) * (c - 1), 2 * static_cast<int128>(r),
          static_cast<int128>(r) * (r - 1)};
}

std::array<int128, 10> layer1_psi0_numerators(std::int64_t n, std::int64_t r) {
  const int128 a = n - r - 1, b = n - r - 2, c = n - r - 3;
  const int128 p = r - 1, q = r - 2, s = r - 3;
  return {a * b * c,
          3 * a * b,
          3 * a * b,
          3 * a * (p * b + 2),
          6 * p * a,
          6 * p * a,
          3 * p * (q * a + 2),
          3 * p * q,
          3 * p * q,
          p * q * s};
}

}  // namespace detwalk
