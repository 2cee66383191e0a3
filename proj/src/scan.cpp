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

// Triangle scan kernels. Built with host vector extensions when
// DETWALK_NATIVE_SCAN is on.

#include <algorithm>
#include <limits>

#include "detwalk/pipeline.hpp"

namespace detwalk {

namespace kernels {

namespace {

inline std::int64_t need_for(std::int64_t d, std::int64_t wab, std::int64_t M) {
  std::int64_t x = (d - wab) % M;
  return x < 0 ? x + M : x;
}

void merge(TriangleScan &acc, std::int64_t count, std::int64_t code, int n) {
  acc.count += count;
  if (code != std::numeric_limits<std::int64_t>::max()) {
    const Triple t{static_cast<int>(code / (static_cast<std::int64_t>(n) * n)),
                   static_cast<int>((code / n) % n), static_cast<int>(code % n)};
    acc.first = t;
  }
}

}  // namespace

TriangleScan scan_triangles(int n, std::int64_t M, std::int64_t d, const std::vector<std::int64_t> &w) {
  std::int64_t count = 0;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  const std::int64_t *base = w.data();
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count) reduction(min : best)
  for (int a = 0; a < n; ++a) {
    const std::int64_t *ra = base + static_cast<std::size_t>(a) * n;
    for (int b = a + 1; b < n; ++b) {
      const std::int64_t *rb = base + static_cast<std::size_t>(b) * n;
      const std::int64_t lo = need_for(d, ra[b], M);
      const std::int64_t hi = lo + M;
      std::int64_t hits = 0;
      for (int c = b + 1; c < n; ++c) {
        const std::int64_t s = ra[c] + rb[c];
        hits += static_cast<std::int64_t>(s == lo) + static_cast<std::int64_t>(s == hi);
      }
      if (hits == 0) continue;
      count += hits;
      for (int c = b + 1; c < n; ++c) {
        const std::int64_t s = ra[c] + rb[c];
        if (s == lo || s == hi) {
          best = std::min(best, (static_cast<std::int64_t>(a) * n + b) * n + c);
          break;
        }
      }
    }
  }
  TriangleScan out;
  merge(out, count, best, n);
  return out;
}

namespace serial {

TriangleScan scan_triangles(int n, std::int64_t M, std::int64_t d, const std::vector<std::int64_t> &w) {
  TriangleScan out;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const std::int64_t s = (w[static_cast<std::size_t>(a) * n + b] + w[static_cast<std::size_t>(b) * n + c] +
                                w[static_cast<std::size_t>(c) * n + a]) % M;
        if (s == d) {
          if (!out.first) out.first = Triple{a, b, c};
          ++out.count;
        }
      }
    }
  }
  return out;
}

}  // namespace serial
}  // namespace kernels

}  // namespace detwalk
