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

#include <doctest.h>

#include <cmath>
#include <random>

#include "detwalk/instance_io.hpp"
#include "detwalk/pipeline.hpp"

using namespace detwalk;

namespace {

std::vector<std::int64_t> zeros(int n) { return std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, 0); }

void set_w(std::vector<std::int64_t> &w, int n, int i, int j, std::int64_t x) {
  w[static_cast<std::size_t>(i) * n + j] = x;
  w[static_cast<std::size_t>(j) * n + i] = x;
}

}  // namespace

TEST_CASE("classical oracle examples") {
  const auto none = TriangleInstance::create(8, 2, 1, zeros(8));
  CHECK_FALSE(classical_oracle(none).has_value());
  CHECK_FALSE(none.planted().has_value());

  auto w = zeros(8);
  set_w(w, 8, 0, 1, 1);
  set_w(w, 8, 1, 2, 1);
  set_w(w, 8, 0, 2, 1);
  const auto one = TriangleInstance::create(8, 4, 3, w);
  REQUIRE(classical_oracle(one).has_value());
  CHECK(*classical_oracle(one) == Triple{0, 1, 2});
  CHECK(one.is_target(2, 0, 1));
  CHECK_FALSE(one.is_target(0, 1, 3));

  set_w(w, 8, 3, 4, 1);
  set_w(w, 8, 4, 5, 1);
  set_w(w, 8, 3, 5, 1);
  CHECK_THROWS_AS(TriangleInstance::create(8, 4, 3, w), PromiseViolation);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(TriangleInstance::create(7, 4, 0, zeros(7)), ParameterError);
  CHECK_THROWS_AS(TriangleInstance::create(8, 4, 4, zeros(8)), ParameterError);
  auto w = zeros(8);
  w[1] = 2;
  CHECK_THROWS_AS(TriangleInstance::create(8, 4, 1, w), ParameterError);
  CHECK_THROWS_AS(generate_instance(16, 100, 100, false, 1), ParameterError);
  CHECK_THROWS_AS(generate_instance(16, 100, -1, false, 1), ParameterError);
}

TEST_CASE("generator is seeded and honest") {
  const auto a = generate_instance(32, 32768, 5, true, 42);
  const auto b = generate_instance(32, 32768, 5, true, 42);
  CHECK(a.weights() == b.weights());
  REQUIRE(a.planted().has_value());
  CHECK(classical_oracle(a) == a.planted());
  const auto c = generate_instance(32, 32768, 5, false, 42);
  CHECK_FALSE(classical_oracle(c).has_value());
}

TEST_CASE("parallel scan matches serial") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 40;
    const std::int64_t M = 64;
    std::uniform_int_distribution<std::int64_t> draw(0, M - 1);
    auto w = zeros(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) set_w(w, n, i, j, draw(rng));
    }
    const std::int64_t d = draw(rng);
    const auto p = kernels::scan_triangles(n, M, d, w);
    const auto s = kernels::serial::scan_triangles(n, M, d, w);
    CHECK(p.count == s.count);
    CHECK(p.count > 1);
    CHECK(p.first == s.first);
  }
  std::vector<std::int64_t> w(100, 0);
  const auto p = kernels::scan_triangles(10, 2, 0, w);
  CHECK(p.count == 120);
  CHECK(p.first == Triple{0, 1, 2});
}

TEST_CASE("instance json round trip") {
  const auto a = generate_instance(10, 1000, 7, true, 3);
  const auto b = instance_from_json_text(instance_to_json_text(a));
  CHECK(a.weights() == b.weights());
  CHECK(b.M() == 1000);
  CHECK_THROWS(instance_from_json_text("{\"n\": 8}"));
  CHECK_THROWS(instance_from_json_text("not json"));
  CHECK_THROWS(instance_from_json_text(R"({"n":8,"M":4,"d":0,"weights":[],"extra":1})"));
}

TEST_CASE("layer plans") {
  const Layer1Plan l1 = plan_layer1(2187, 81);
  CHECK(l1.t1 == 20);
  CHECK(l1.t2 == 2);
  CHECK(l1.fidelity >= 1.0 - 1e-10);
  CHECK(l1.p > 0.0);
  CHECK(l1.p <= 1.0 + 1e-12);
  CHECK_THROWS_AS(plan_layer1(2187, 3), ParameterError);

  const Layer4Plan l4 = plan_layer4(81, 243, 27);
  CHECK(l4.t1 == 6);
  CHECK(l4.t2 == 4);
  CHECK(l4.fidelity >= 1.0 - 1e-10);

  const Layer3Plan l3 = plan_layer3(128, 16, 32);
  CHECK(l3.size == 79);
  CHECK(l3.search.lambda == doctest::Approx(1.0 / 79.0).epsilon(1e-15));
  CHECK(l3.fidelity >= 1.0 - 1e-10);
  const Layer3Plan unit = plan_layer3(10, 4, 4);
  CHECK(unit.search.k == 0);
  CHECK_THROWS_AS(plan_layer3(9, 4, 4), ParameterError);

  const Layer2Plan l2 = plan_layer2(96, 32);
  CHECK(l2.epsilon == doctest::Approx(126.0 / 285.0).epsilon(1e-14));
  CHECK(l2.search.lambda == doctest::Approx(126.0 / 285.0).epsilon(1e-14));
  CHECK(l2.fidelity >= 1.0 - 1e-10);
  CHECK(l2.search.k >= static_cast<int>(std::ceil(k_lower(l2.search.lambda, l2.search.beta) - 1e-9)));
  PlanOptions bad;
  bad.layer2_scheme = Scheme::long_phase;
  CHECK_THROWS_AS(plan_layer2(96, 32, bad), ParameterError);
}

TEST_CASE("emulation at n=128") {
  const AlgorithmPlan &plan = algorithm_plan_for(128);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto yes = generate_instance(128, 128LL * 128 * 128, 11, true, seed);
    const EmulationTrace t = emulate(yes, seed, plan);
    CHECK(t.verdict == classical_oracle(yes));
    CHECK(t.disjoint);
    for (const auto &l : t.layers) CHECK(l.fidelity >= 1.0 - 1e-9);
    const auto no = generate_instance(128, 128LL * 128 * 128, 11, false, seed + 100);
    const EmulationTrace u = emulate(no, seed, plan);
    CHECK_FALSE(u.verdict.has_value());
    CHECK(u.total_queries == t.total_queries);
  }
  const auto yes = generate_instance(128, 128LL * 128 * 128, 0, true, 9);
  const EmulationTrace a = emulate(yes, 77, plan);
  const EmulationTrace b = emulate(yes, 77, plan);
  CHECK(a.R1 == b.R1);
  CHECK(a.S2 == b.S2);
  CHECK(a.y == b.y);
  const auto other = generate_instance(64, 64LL * 64 * 64, 0, false, 1);
  CHECK_THROWS_AS(emulate(other, 1, plan), ParameterError);
}
