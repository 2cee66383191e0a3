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

// Prints one PASS/FAIL line per acceptance criterion. Exit status is 1 when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "detwalk/combinatorics.hpp"
#include "detwalk/eedp.hpp"
#include "detwalk/fullspace.hpp"
#include "detwalk/parallel.hpp"
#include "detwalk/pipeline.hpp"
#include "detwalk/search.hpp"
#include "detwalk/subspaces.hpp"

using namespace detwalk;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;
  void fail(const std::string &why) {
    failures += (pass ? "" : "; ") + why;
    pass = false;
  }
  std::string text() const { return pass ? detail.str() : detail.str() + " | failed: " + failures; }
};

std::int64_t pow7(std::int64_t j) {
  std::int64_t n = 1;
  for (int i = 0; i < 7; ++i) n *= j;
  return n;
}

void reduction_equivalence(Verdict &v) {
  double worst = 0.0;
  const std::vector<std::pair<int, int>> vertex{{6, 2}, {7, 2}, {7, 3}, {8, 3}};
  for (auto [N, r] : vertex) {
    const auto b = enumerate_vertex_basis({N, r}, from_elements({0, 1}));
    const ClassProjector P = class_projector(b);
    const ReducedWalk w = build_vertexwalk_5d({N, r}, {1, 0});
    for (double t1 : {0.7, 1.1, kPi}) {
      for (double t2 : {0.7, 1.1, kPi}) {
        const auto rep = verify_reduction(full_vertex_step(b, t1, t2), P, vertexwalk_step(w, t1, t2));
        worst = std::max({worst, rep.maxdev, rep.leakage});
        if (!rep.pass) v.fail("vertex (" + std::to_string(N) + "," + std::to_string(r) + ")");
      }
    }
  }
  for (int n : {9, 10, 11}) {
    const auto b = enumerate_edge_basis(n, 4, from_elements({0, 1, 2}));
    const auto rep = verify_reduction(full_edge_step(b), class_projector(b), edgewalk_step(build_layer1_10d(n, 4)));
    worst = std::max({worst, rep.maxdev, rep.leakage});
    if (!rep.pass) v.fail("edge n=" + std::to_string(n));
  }
  v.detail << "max deviation " << worst;
}

void product_reduction(Verdict &v) {
  double worst = 0.0;
  for (auto [r1, r2, m] : std::vector<std::array<int, 3>>{{5, 5, 2}, {6, 5, 2}}) {
    const auto b = enumerate_product_basis(r1, r2, m, 0, 0);
    const auto rep = verify_reduction(full_product_step(b), class_projector(b),
                                      product_walk_step(build_layer4_9d(r1, r2, m)));
    worst = std::max({worst, rep.maxdev, rep.leakage});
    if (!rep.pass) v.fail("dim " + std::to_string(b.size()));
  }
  v.detail << "max deviation " << worst;
}

void long_determinism(Verdict &v) {
  double worst = 0.0;
  int cells = 0;
  for (double lambda : {0.01, 0.05, 0.1, 0.25, 0.5, 0.9}) {
    const int base = static_cast<int>(std::ceil(k_opt(lambda)));
    for (int k : {base + 1, base + 5}) {
      const double f = std::abs(run_two_dim(long_params(lambda, k))(0));
      worst = std::max(worst, std::abs(1.0 - f));
      ++cells;
    }
  }
  if (worst > 1e-10) v.fail("fidelity defect above 1e-10");
  v.detail << cells << " cells, max |1 - fidelity| " << worst;
}

void fixed_beta_determinism(Verdict &v) {
  const double betas[] = {0.6 * kPi, kPi, 1.29 * kPi, 1.7 * kPi};
  double worst = 0.0, alpha_dev = 0.0;
  int cells = 0, failed = 0;
  std::ostringstream bad;
  for (double lambda : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    for (double beta : betas) {
      ++cells;
      try {
        const int k = default_fixed_beta_k(lambda, beta);
        const SearchPlan p = fixed_beta_params(lambda, beta, k);
        worst = std::max(worst, std::abs(1.0 - std::abs(run_two_dim(p)(0))));
        if (beta == kPi) {
          // equal angles at the phase of a 2k-step phase-matched plan give that plan back
          const SearchPlan l = long_params(lambda, 2 * k);
          const SearchPlan e = fixed_beta_params(lambda, kTwoPi - l.alpha1, k, {true});
          alpha_dev = std::max(alpha_dev, std::abs(wrap_pi(e.alpha1 - l.alpha1)));
        }
      } catch (const std::exception &e) {
        ++failed;
        bad << " (lambda=" << lambda << ", beta/pi=" << beta / kPi << ": " << e.what() << ")";
      }
    }
  }
  // lambda = sin^2(pi/(8k+2)): the 2k-step phase-matched angle is pi, so beta = pi exactly
  for (int k = 1; k <= 6; ++k) {
    const double lambda = std::pow(std::sin(kPi / (8 * k + 2)), 2);
    try {
      const SearchPlan e = fixed_beta_params(lambda, kPi, k, {true});
      alpha_dev = std::max(alpha_dev, std::abs(wrap_pi(e.alpha1 - long_params(lambda, 2 * k).alpha1)));
    } catch (const std::exception &ex) {
      ++failed;
      bad << " (beta=pi probe k=" << k << ": " << ex.what() << ")";
    }
  }
  if (failed) v.fail(std::to_string(failed) + " unsolved cell(s)" + bad.str());
  if (worst > 1e-10) v.fail("fidelity defect above 1e-10");
  if (alpha_dev > 1e-9) v.fail("beta=pi angles differ from the phase-matched ones");
  v.detail << cells << " cells, max |1 - fidelity| " << worst << ", alpha deviation "
           << alpha_dev;
}

void phase_walk(Verdict &v) {
  for (std::int64_t N : {100, 1000, 10000}) {
    const std::int64_t r = round_half_away(std::sqrt(static_cast<double>(N)));
    try {
      const EedpSolution s = solve_eedp({N, r}, {1, 0});
      const double sr = std::sqrt(static_cast<double>(r));
      v.detail << "N=" << N << " t=" << s.t << " (" << s.t / sr << " sqrt r) beta/pi=" << s.beta / kPi
               << " residual=" << s.residual << "; ";
      if (s.residual > 1e-8) v.fail("residual above 1e-8 at N=" + std::to_string(N));
      if (s.t > 4.0 * sr) v.fail("t exceeds 4 sqrt(r) at N=" + std::to_string(N));
      if (N == 10000 && std::abs(s.beta - 1.29 * kPi) > 0.05 * kPi) v.fail("beta not within 0.05 pi of 1.29 pi");
    } catch (const std::exception &e) {
      v.fail(std::string("N=") + std::to_string(N) + ": " + e.what());
    }
  }
}

double amplitude_ratio(bool layer4, std::int64_t j) {
  const LayerParams p = LayerParams::from_n(pow7(j));
  if (layer4) {
    const Layer4Plan l = plan_layer4(p.r1, p.r2, p.m);
    const double r1 = static_cast<double>(p.r1), r2 = static_cast<double>(p.r2), m = static_cast<double>(p.m);
    return (1.0 - l.p) / (m / r1 + m / r2 + 1.0 / m);
  }
  const Layer1Plan l = plan_layer1(p.n, p.r1);
  const double r1 = static_cast<double>(p.r1);
  return (1.0 - l.p) / (1.0 / r1 + r1 / static_cast<double>(p.n));
}

void amplitude_trends(Verdict &v) {
  for (bool layer4 : {true, false}) {
    const double C = amplitude_ratio(layer4, 2);
    double worst = 0.0;
    for (std::int64_t j = 2; j <= 10; ++j) worst = std::max(worst, amplitude_ratio(layer4, j) / C);
    v.detail << (layer4 ? "layer 4" : "layer 1") << ": C=" << C << " max ratio/C=" << worst << "; ";
    if (worst > 2.0) v.fail(std::string(layer4 ? "layer 4" : "layer 1") + " ratio exceeds 2C");
  }
}

void end_to_end(Verdict &v) {
  for (int n : {128, 2187}) {
    const AlgorithmPlan &plan = algorithm_plan_for(n);
    const std::int64_t M = static_cast<std::int64_t>(n) * n * n;
    int mismatches = 0, low = 0, errors = 0;
    for (int i = 0; i < 200; ++i) {
      const bool plant = i < 100;
      try {
        const auto inst = generate_instance(n, M, (i * 7919) % M, plant, 1000 + static_cast<std::uint64_t>(i));
        const EmulationTrace t = emulate(inst, static_cast<std::uint64_t>(i) + 1, plan);
        for (const auto &l : t.layers) low += l.fidelity < 1.0 - 1e-9;
        if (t.verdict != classical_oracle(inst) || t.verdict.has_value() != plant) ++mismatches;
      } catch (const std::exception &) {
        ++errors;
      }
    }
    v.detail << "n=" << n << ": " << mismatches << " mismatches, " << low << " low-fidelity layers, " << errors
             << " errors; ";
    if (mismatches || low || errors) v.fail("n=" + std::to_string(n));
  }
}

void query_ledger(Verdict &v) {
  double lo = INFINITY, hi = 0.0;
  bool comp = true;
  for (std::int64_t j = 2; j <= 10; ++j) {
    const QueryLedger q = ledger(pow7(j));
    lo = std::min(lo, q.ratio());
    hi = std::max(hi, q.ratio());
    comp = comp && q.c1 == 2.0 * q.u1 + 4.0 * q.c1bar;
  }
  v.detail << "ratio range [" << lo << ", " << hi << "], band " << hi / lo;
  if (hi / lo > 4.0) v.fail("band exceeds 4");
  if (!comp) v.fail("composition identity broken");
}

void counting_identities(Verdict &v) {
  long checked = 0;
  for (std::int64_t N = 4; N <= 60; ++N) {
    for (std::int64_t r = 1; r <= std::min<std::int64_t>(30, N - 2); ++r) {
      for (int j = 0; j <= 2; ++j) {
        for (int l = 0; l + j <= 2 && l <= 1; ++l) {
          const auto c = vertex_class_count(N, r, j, l);
          ++checked;
          if (c.by_pairs != c.by_supersets) v.fail("class count mismatch");
        }
      }
    }
  }
  long sums = 0;
  for (std::int64_t n = 10; n <= 60; ++n) {
    for (std::int64_t r1 = 4; r1 + 4 <= n; ++r1) {
      int128 s = 0;
      for (auto x : layer1_psi0_numerators(n, r1)) s += x;
      ++sums;
      if (s != int128(n) * (n - 1) * (n - 2)) v.fail("numerator sum mismatch");
    }
  }
  v.detail << checked << " class counts, " << sums << " numerator sums";
}

}  // namespace

int main() {
  configure_threads_from_env();
  const std::vector<std::pair<std::string, std::function<void(Verdict &)>>> criteria{
      {"reduction equivalence", reduction_equivalence},
      {"product-walk reduction", product_reduction},
      {"phase-matched search determinism", long_determinism},
      {"fixed-phase search determinism", fixed_beta_determinism},
      {"phase-walk reflection", phase_walk},
      {"amplitude trends", amplitude_trends},
      {"end-to-end soundness", end_to_end},
      {"query ledger", query_ledger},
      {"counting identities", counting_identities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception &e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("criterion %zu %-34s %s  [%.1fs] %s\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                secs, v.text().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
