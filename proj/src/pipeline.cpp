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

#include "detwalk/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace detwalk {

// ---- instances ------------------------------------------------------------

TriangleInstance TriangleInstance::create(int n, std::int64_t M, std::int64_t d,
                                          std::vector<std::int64_t> weights) {
  if (n < 8) throw ParameterError("instance needs n >= 8");
  if (M < 2 || M > (std::int64_t{1} << 61)) throw ParameterError("modulus M must lie in [2, 2^61]");
  if (d < 0 || d >= M) throw ParameterError("target d must lie in [0, M)");
  if (weights.size() != static_cast<std::size_t>(n) * n) {
    throw ParameterError("weights must hold n*n entries");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::int64_t x = weights[static_cast<std::size_t>(i) * n + j];
      if (x < 0 || x >= M) throw ParameterError("weight outside [0, M)");
      if (x != weights[static_cast<std::size_t>(j) * n + i]) throw ParameterError("weights are not symmetric");
      if (i == j && x != 0) throw ParameterError("diagonal weights must be zero");
    }
  }
  const TriangleScan scan = kernels::scan_triangles(n, M, d, weights);
  if (scan.count > 1) {
    throw PromiseViolation("instance has " + std::to_string(scan.count) + " target triples, at most one allowed");
  }
  TriangleInstance inst;
  inst.n_ = n;
  inst.M_ = M;
  inst.d_ = d;
  inst.w_ = std::move(weights);
  inst.planted_ = scan.first;
  return inst;
}

bool TriangleInstance::is_target(int a, int b, int c) const {
  if (a == b || b == c || a == c) return false;
  return (w(a, b) + w(b, c) + w(c, a)) % M_ == d_;
}

std::optional<Triple> classical_oracle(const TriangleInstance &inst) {
  const TriangleScan s = kernels::scan_triangles(inst.n(), inst.M(), inst.d(), inst.weights());
  if (s.count > 1) throw PromiseViolation("promise violated: " + std::to_string(s.count) + " target triples");
  return s.first;
}

TriangleInstance generate_instance(int n, std::int64_t M, std::int64_t d, bool plant, std::uint64_t seed,
                                   int max_attempts) {
  if (n < 8) throw ParameterError("instance needs n >= 8");
  if (M < 2 || M > (std::int64_t{1} << 61)) throw ParameterError("modulus M must lie in [2, 2^61]");
  if (d < 0 || d >= M) throw ParameterError("target d must lie in [0, M)");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> draw(0, M - 1);
  std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n);
  std::vector<int> verts(static_cast<std::size_t>(n));
  std::iota(verts.begin(), verts.end(), 0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i) * n + i] = 0;
      for (int j = i + 1; j < n; ++j) {
        const std::int64_t x = draw(rng);
        w[static_cast<std::size_t>(i) * n + j] = x;
        w[static_cast<std::size_t>(j) * n + i] = x;
      }
    }
    if (plant) {
      for (int k = 0; k < 3; ++k) {
        std::uniform_int_distribution<int> pick(k, n - 1);
        std::swap(verts[static_cast<std::size_t>(k)], verts[static_cast<std::size_t>(pick(rng))]);
      }
      const int a = verts[0], b = verts[1], c = verts[2];
      std::int64_t x = (d - w[static_cast<std::size_t>(a) * n + b] - w[static_cast<std::size_t>(b) * n + c]) % M;
      if (x < 0) x += M;
      w[static_cast<std::size_t>(c) * n + a] = x;
      w[static_cast<std::size_t>(a) * n + c] = x;
    }
    try {
      TriangleInstance inst = TriangleInstance::create(n, M, d, w);
      if (inst.planted().has_value() == plant) return inst;
    } catch (const PromiseViolation &) {
    }
  }
  throw ParameterError("generate_instance: rejection budget exhausted after " + std::to_string(max_attempts) +
                       " draws; try a larger M");
}

// ---- layer plans ----------------------------------------------------------

namespace {

void require_fidelity(const char *layer, double fid, double tol) {
  if (!(fid >= 1.0 - tol)) {
    std::ostringstream os;
    os << layer << ": deterministic search fidelity " << fid << " is below 1 - " << tol;
    throw EmulationError(os.str());
  }
}

Operator target_flip(int dim, int idx) { return reflection_about(StateVector::Unit(dim, idx), kPi); }

template <class Plan>
void amplify(Plan &out, const ReducedWalk &w, const Operator &step, double tol, const char *name) {
  const Operator v = amplification_operator(step, target_flip(w.dim(), w.target_index), out.t1, out.t2);
  const StateVector psi = w.psi0_complex();
  out.p = std::abs((v * psi)(w.target_index));
  const double lambda = std::min(1.0, out.p * out.p);
  out.search = long_params(lambda, min_long_k(lambda));
  const Operator prep = v * prep_from_state(psi);
  const StateVector fin = run_search(prep, w.target_index, out.search);
  out.fidelity = std::abs(fin(w.target_index));
  out.outside_mass = mass_outside(fin, {w.target_index});
  require_fidelity(name, out.fidelity, tol);
}

double idle_amplified(const ReducedWalk &w, const Operator &step, int t1, int t2, const SearchPlan &plan) {
  const Operator v = amplification_operator(step, identity(w.dim()), t1, t2);
  const StateVector psi = w.psi0_complex();
  const StateVector fin = run_search(v * prep_from_state(psi), std::vector<int>{}, plan);
  return std::abs(psi.dot(fin));
}

}  // namespace

Layer4Plan plan_layer4(std::int64_t r1, std::int64_t r2, std::int64_t m, double tol) {
  const ReducedWalk w = build_layer4_9d(r1, r2, m);
  Layer4Plan out;
  out.r1 = r1;
  out.r2 = r2;
  out.m = m;
  const double md = static_cast<double>(m);
  out.t1 = static_cast<int>(round_half_away(kPi / 2.0 * std::sqrt(md / 2.0)));
  out.t2 = static_cast<int>(round_half_away(kPi / 4.0 * std::sqrt(static_cast<double>(r1) * r2) / md));
  amplify(out, w, product_walk_step(w), tol, "layer 4");
  return out;
}

Layer3Plan plan_layer3(std::int64_t n, std::int64_t r1, std::int64_t r2, double tol) {
  Layer3Plan out;
  out.size = n - r1 - r2 - 1;
  if (out.size < 1) throw ParameterError("layer 3: search space [n] - R1 - R2 - y is empty");
  const double lambda = 1.0 / static_cast<double>(out.size);
  out.search = long_params(lambda, min_long_k(lambda));
  const StateVector fin = run_two_dim(out.search);
  out.fidelity = std::abs(fin(0));
  out.outside_mass = mass_outside(fin, {0});
  require_fidelity("layer 3", out.fidelity, tol);
  return out;
}

Layer2Plan plan_layer2(std::int64_t n1, std::int64_t r2, const PlanOptions &opt, double c2, double u2) {
  if (opt.layer2_scheme == Scheme::long_phase) {
    throw ParameterError(
        "layer 2 cannot use the Long scheme: its psi0 reflection is the walk phase U^t, whose "
        "angle is fixed by the walk, and a free-angle reflection would need r1*r2 queries");
  }
  const JohnsonParams jp{n1, r2};
  const MarkedClass target{1, 0};
  const ReducedWalk w = build_vertexwalk_5d(jp, target);

  std::vector<std::pair<double, EedpSolution>> cands;
  if (opt.policy == EedpPolicy::fixed_winding) {
    cands.push_back({0.0, solve_eedp(jp, target, opt.eedp)});
  } else {
    for (const auto &s : enumerate_eedp(jp, target, opt.eedp)) {
      const double bg = wrap_two_pi(-s.beta);
      try {
        const int k = default_fixed_beta_k(w.epsilon, bg);
        cands.push_back({2.0 * k * (s.t * u2 + c2), s});
      } catch (const SearchError &) {
        // resonant phase, no fixed-beta plan
      }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const auto &a, const auto &b) {
      return a.first < b.first || (a.first == b.first && a.second.t < b.second.t);
    });
  }
  if (cands.empty()) throw SearchError("layer 2: no phase-walk solution in range");

  std::string last_error;
  for (const auto &[cost, s] : cands) {
    (void)cost;
    try {
      Layer2Plan out;
      out.n1 = n1;
      out.r2 = r2;
      out.epsilon = w.epsilon;
      out.eedp = s;
      out.search = fixed_beta_params(w.epsilon, wrap_two_pi(-s.beta));
      const Operator s_psi = mat_power(vertexwalk_step(w, s.theta1, s.theta2), static_cast<std::uint64_t>(s.t));
      const StateVector fin = run_search_with(w.psi0_complex(), s_psi, {w.target_index}, out.search);
      out.fidelity = std::abs(fin(w.target_index));
      out.outside_mass = mass_outside(fin, {w.target_index});
      require_fidelity("layer 2", out.fidelity, opt.fidelity_tol);
      return out;
    } catch (const std::runtime_error &e) {
      last_error = e.what();
    }
  }
  throw SearchError("layer 2: every candidate failed; last error: " + last_error);
}

Layer1Plan plan_layer1(std::int64_t n, std::int64_t r1, double tol) {
  const ReducedWalk w = build_layer1_10d(n, r1);
  Layer1Plan out;
  out.n = n;
  out.r1 = r1;
  const double r = static_cast<double>(r1);
  out.t1 = static_cast<int>(round_half_away(kPi / 2.0 * std::sqrt(2.0 * r)));
  out.t2 = static_cast<int>(round_half_away(kPi / 4.0 * std::sqrt(static_cast<double>(n) / (3.0 * r))));
  amplify(out, w, edgewalk_step(w), tol, "layer 1");
  return out;
}

AlgorithmPlan build_algorithm_plan(const LayerParams &p, const PlanOptions &opt) {
  p.validate();
  AlgorithmPlan plan;
  plan.params = p;
  plan.l4 = plan_layer4(p.r1, p.r2, p.m, opt.fidelity_tol);
  plan.l3 = plan_layer3(p.n, p.r1, p.r2, opt.fidelity_tol);
  // lower layers fix c2, which prices the layer-2 candidates
  const QueryLedger partial = account(plan, opt.constants);
  plan.l2 = plan_layer2(p.n1(), p.r2, opt, partial.c2, partial.u2);
  plan.l1 = plan_layer1(p.n, p.r1, opt.fidelity_tol);
  plan.ledger = account(plan, opt.constants);

  const ReducedWalk w4 = build_layer4_9d(p.r1, p.r2, p.m);
  plan.idle_fidelity[0] = idle_amplified(w4, product_walk_step(w4), plan.l4.t1, plan.l4.t2, plan.l4.search);
  {
    Operator prep(2, 2);
    const double a = std::sqrt(plan.l3.search.lambda), b = std::sqrt(1.0 - plan.l3.search.lambda);
    prep << a, -b, b, a;
    const StateVector fin = run_search(prep, std::vector<int>{}, plan.l3.search);
    plan.idle_fidelity[1] = std::abs(StateVector(prep.col(0)).dot(fin));
  }
  {
    const ReducedWalk w2 = build_vertexwalk_5d({p.n1(), p.r2}, {1, 0});
    const auto &s = plan.l2.eedp;
    const Operator s_psi = mat_power(vertexwalk_step(w2, s.theta1, s.theta2), static_cast<std::uint64_t>(s.t));
    const StateVector fin = run_search_with(w2.psi0_complex(), s_psi, {}, plan.l2.search);
    plan.idle_fidelity[2] = std::abs(w2.psi0_complex().dot(fin));
  }
  const ReducedWalk w1 = build_layer1_10d(p.n, p.r1);
  plan.idle_fidelity[3] = idle_amplified(w1, edgewalk_step(w1), plan.l1.t1, plan.l1.t2, plan.l1.search);
  return plan;
}

const AlgorithmPlan &algorithm_plan_for(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, AlgorithmPlan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_algorithm_plan(LayerParams::from_n(n))).first;
  return it->second;
}

QueryLedger ledger(std::int64_t n, const PlanOptions &opt) {
  return build_algorithm_plan(LayerParams::from_n(n), opt).ledger;
}

// ---- emulation ------------------------------------------------------------

namespace {

using Rng = std::mt19937_64;

int uniform_int(Rng &rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

// k distinct elements of pool, uniformly
std::vector<int> sample(std::vector<int> pool, int k, Rng &rng) {
  if (k > static_cast<int>(pool.size())) throw EmulationError("sample: pool too small");
  for (int i = 0; i < k; ++i) {
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(uniform_int(rng, i, static_cast<int>(pool.size()) - 1))]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<int> without(const std::vector<int> &pool, const std::vector<int> &drop) {
  std::vector<int> out;
  for (int x : pool) {
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
  }
  return out;
}

// uniform subset of size k from pool holding exactly one element of marks
std::vector<int> sample_one_marked(const std::vector<int> &pool, const std::vector<int> &marks, int k,
                                   Rng &rng, int &chosen) {
  chosen = marks[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(marks.size()) - 1))];
  std::vector<int> s = sample(without(pool, marks), k - 1, rng);
  s.push_back(chosen);
  std::sort(s.begin(), s.end());
  return s;
}

bool disjoint_sets(const std::vector<std::vector<int>> &sets) {
  std::vector<int> all;
  for (const auto &s : sets) all.insert(all.end(), s.begin(), s.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

}  // namespace

EmulationTrace emulate(const TriangleInstance &inst, std::uint64_t seed, double fidelity_tol) {
  return emulate(inst, seed, algorithm_plan_for(inst.n()), fidelity_tol);
}

EmulationTrace emulate(const TriangleInstance &inst, std::uint64_t seed, const AlgorithmPlan &plan,
                       double fidelity_tol) {
  const LayerParams &p = plan.params;
  if (p.n != inst.n()) throw ParameterError("emulate: plan and instance sizes differ");
  const int n = inst.n();
  const int r1 = static_cast<int>(p.r1), r2 = static_cast<int>(p.r2), m = static_cast<int>(p.m);
  const bool planted = inst.planted().has_value();
  Rng rng(seed);

  EmulationTrace tr;
  const char *names[4] = {"layer4", "layer3", "layer2", "layer1"};
  const double fid[4] = {plan.l4.fidelity, plan.l3.fidelity, plan.l2.fidelity, plan.l1.fidelity};
  const double out[4] = {plan.l4.outside_mass, plan.l3.outside_mass, plan.l2.outside_mass, plan.l1.outside_mass};
  for (int i = 0; i < 4; ++i) {
    LayerOutcome o;
    o.name = names[i];
    o.degenerate = !planted;
    o.fidelity = planted ? fid[i] : plan.idle_fidelity[static_cast<std::size_t>(i)];
    o.outside_mass = planted ? out[i] : std::max(0.0, 1.0 - o.fidelity * o.fidelity);
    if (!(o.fidelity >= 1.0 - fidelity_tol)) {
      throw EmulationError(o.name + ": fidelity " + std::to_string(o.fidelity) + " below tolerance");
    }
    tr.layers.push_back(o);
  }

  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);

  if (planted) {
    const Triple t = *inst.planted();
    const std::vector<int> tri{t.a, t.b, t.c};
    // layer 1: class (1,1); every R with one triangle vertex has the same number of such neighbours
    int a = -1;
    tr.R1 = sample_one_marked(all, tri, r1, rng, a);
    // layer 2 on [n] - R1 with K = triangle - R1, class (1,0)
    const std::vector<int> K = without(tri, {a});
    const std::vector<int> rest1 = without(all, tr.R1);
    int b = -1;
    tr.R2 = sample_one_marked(rest1, K, r2, rng, b);
    const std::vector<int> coin = without(without(rest1, tr.R2), K);
    tr.y = coin[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(coin.size()) - 1))];
    // layer 3: the single marked z
    tr.z = without(K, {b}).front();
    // layer 4: class (1,1)-(1,1)
    int dummy = -1;
    tr.S1 = sample_one_marked(tr.R1, {a}, m, rng, dummy);
    tr.S2 = sample_one_marked(tr.R2, {b}, m, rng, dummy);
  } else {
    tr.R1 = sample(all, r1, rng);
    const std::vector<int> rest1 = without(all, tr.R1);
    tr.R2 = sample(rest1, r2, rng);
    const std::vector<int> rest2 = without(rest1, tr.R2);
    tr.y = rest2[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rest2.size()) - 1))];
    const std::vector<int> rest3 = without(rest2, {tr.y});
    tr.z = rest3[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rest3.size()) - 1))];
    tr.S1 = sample(tr.R1, m, rng);
    tr.S2 = sample(tr.R2, m, rng);
  }
  tr.disjoint = disjoint_sets({tr.R1, tr.R2, {tr.y}, {tr.z}});

  // classical check on the measured sets
  for (int s1 : tr.S1) {
    for (int s2 : tr.S2) {
      if (inst.is_target(s1, s2, tr.z)) {
        std::array<int, 3> v{s1, s2, tr.z};
        std::sort(v.begin(), v.end());
        tr.verdict = Triple{v[0], v[1], v[2]};
      }
    }
  }
  tr.total_queries = plan.ledger.c0;
  return tr;
}

}  // namespace detwalk
