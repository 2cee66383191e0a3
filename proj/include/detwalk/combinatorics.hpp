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
#include <string>
#include <vector>

namespace detwalk {

using int128 = __int128;

// Exact binomial coefficient; 0 outside 0 <= k <= n. Throws on overflow.
int128 binom(std::int64_t n, std::int64_t k);

std::string to_string(int128 v);
double to_double(int128 v);

// Subsets of [n] (n <= 64) are bitmasks; order is lexicographic on the sorted
// element sequence.
using Subset = std::uint64_t;

int popcount(Subset s);
std::vector<int> elements(Subset s);
Subset from_elements(const std::vector<int> &elts);
bool contains(Subset s, int x);

// All k-subsets of [n] in lexicographic order.
std::vector<Subset> enumerate_subsets(int n, int k);

// Position of s in enumerate_subsets(n, popcount(s)).
std::uint64_t lex_rank(Subset s, int n);
Subset lex_unrank(std::uint64_t rank, int n, int k);

// Index of x among the elements of s in increasing order; -1 if absent.
int position_in(Subset s, int x);
// The i-th smallest element of s.
int element_at(Subset s, int i);

// |S_j^l| for the vertex walk on J(N, r) with a 2-element special set,
// counted from the (R, y) side and from the R + y side.
struct VertexClassCount {
  int128 by_pairs;
  int128 by_supersets;
};
VertexClassCount vertex_class_count(std::int64_t N, std::int64_t r, int j, int l);

// |S_j^l| N(N-1) / (C(N,r)(N-r)) in the order (0,0),(0,1),(1,0),(1,1),(2,0);
// the binomials cancel, so this stays exact for large N.
std::array<int128, 5> vertex5_psi0_numerators(std::int64_t N, std::int64_t r);

// Numerators of the layer-1 initial-state weights over n(n-1)(n-2).
std::array<int128, 10> layer1_psi0_numerators(std::int64_t n, std::int64_t r1);

}  // namespace detwalk
