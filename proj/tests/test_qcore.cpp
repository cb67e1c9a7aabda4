// Copyright 2026 The qrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qrl/generate.hpp"

using namespace qrl;

namespace {

DensityMatrix pure_state(int qubits, std::uint64_t index) {
  const std::int64_t dim = qubit_dim(qubits);
  CMatrix m = CMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix{qubits, std::move(m)};
}

}  // namespace

TEST_CASE("partial trace of |00><00| is |0><0|") {
  const DensityMatrix out = partial_trace_last(pure_state(2, 0));
  CHECK(out.qubits == 1);
  CHECK(out.mat(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(out.mat(1, 1)) == doctest::Approx(0.0));
}

TEST_CASE("partial trace of (I/2) x |1><1| is I/2") {
  CMatrix m = CMatrix::Zero(4, 4);
  m(1, 1) = 0.5;  // |0>|1>
  m(3, 3) = 0.5;  // |1>|1>
  const DensityMatrix out = partial_trace_last(DensityMatrix{2, m});
  CHECK(out.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(out.mat(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(out.mat(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("partial trace of the Bell projector is I/2") {
  CMatrix bell = CMatrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const DensityMatrix out = partial_trace_last(DensityMatrix{2, bell});
  CHECK(out.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(out.mat(1, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(out.mat(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("partial trace rejects empty input and preserves trace") {
  CHECK_THROWS_AS(partial_trace_last(DensityMatrix{0, CMatrix::Identity(1, 1)}),
                  std::invalid_argument);
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = random_density(rng, 4);
    const DensityMatrix out = partial_trace_last(rho);
    CHECK(std::abs(out.mat.trace().real() - rho.mat.trace().real()) <= 1e-12);
  }
}

TEST_CASE("tau levels are normalized identities") {
  const StatePrefix tau = make_tau(4);
  const DensityMatrix l1 = level_matrix(tau, 1);
  CHECK(l1.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(l1.mat(1, 1).real() == doctest::Approx(0.5));
  const DensityMatrix l2 = level_matrix(tau, 2);
  CHECK(max_abs(l2.mat - CMatrix::Identity(4, 4) / 4.0) <= 1e-15);
  check_coherence(tau);
}

TEST_CASE("classical states put weight one on the branch") {
  const StatePrefix s = make_classical("0101", 2);
  CHECK(state_weight(s, "01") == doctest::Approx(1.0));
  CHECK(state_weight(s, "00") == doctest::Approx(0.0));
  const StatePrefix ones = make_classical("111", 3);
  CHECK(state_weight(ones, "111") == doctest::Approx(1.0));
  CHECK_THROWS_AS(make_classical("01", 3), std::invalid_argument);
  check_coherence(s);
  check_coherence(ones);
}

TEST_CASE("bernoulli weights follow the product formula") {
  const StatePrefix half = make_bernoulli(0.5, 3);
  const StatePrefix tau = make_tau(3);
  for (const std::string& sigma : oracle::all_bitstrings(3))
    CHECK(state_weight(half, sigma) == doctest::Approx(state_weight(tau, sigma)));

  const StatePrefix degenerate = make_bernoulli(1.0, 2);
  CHECK(state_weight(degenerate, "00") == doctest::Approx(1.0));

  const StatePrefix third = make_bernoulli(1.0 / 3.0, 2);
  CHECK(state_weight(third, "01") == doctest::Approx(2.0 / 9.0));

  CHECK_THROWS_AS(make_bernoulli(1.5, 2), std::invalid_argument);
}

TEST_CASE("mix_states is the identity on a single state") {
  Rng rng(5);
  const StatePrefix rho = random_dense_state(rng, 3);
  const StatePrefix mixed = mix_states({rho}, {1.0});
  for (int k = 1; k <= 3; ++k)
    CHECK(max_abs(level_matrix(mixed, k).mat - level_matrix(rho, k).mat) <= 1e-15);
}

TEST_CASE("mixing the two constant branches gives the fair coin at level 1") {
  const StatePrefix x = make_classical("0000", 4);
  const StatePrefix y = make_classical("1111", 4);
  const StatePrefix mixed = mix_states({x, y}, {0.5, 0.5});
  CHECK(state_weight(mixed, "0") == doctest::Approx(0.5));
  CHECK(state_weight(mixed, "1") == doctest::Approx(0.5));
  check_coherence(mixed);
}

TEST_CASE("mixture evaluation is linear against random projections") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int depth = rng.uniform_int(2, 4);
    const int parts = rng.uniform_int(2, 3);
    std::vector<StatePrefix> states;
    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < parts; ++i) {
      states.push_back(random_dense_state(rng, depth));
      weights.push_back(rng.uniform(0.1, 1.0));
      total += weights.back();
    }
    for (double& w : weights) w /= total;
    const StatePrefix mixed = mix_states(states, weights);
    for (int k = 1; k <= depth; ++k) {
      const Projector p = random_projector(rng, k, rng.uniform_int(1, static_cast<int>(qubit_dim(k))));
      const CMatrix pd = dense_matrix(p);
      double expected = 0.0;
      for (int i = 0; i < parts; ++i)
        expected += weights[static_cast<std::size_t>(i)] *
                    oracle::naive_trace_product(level_matrix(states[static_cast<std::size_t>(i)], k).mat, pd);
      const double got = oracle::naive_trace_product(level_matrix(mixed, k).mat, pd);
      CHECK(std::abs(got - expected) <= 1e-10);
    }
  }
}

TEST_CASE("mix_states validates depths and weights") {
  Rng rng(3);
  const StatePrefix a = random_dense_state(rng, 2);
  const StatePrefix b = random_dense_state(rng, 3);
  CHECK_THROWS_AS(mix_states({a, b}, {0.5, 0.5}), std::invalid_argument);
  const StatePrefix c = random_dense_state(rng, 2);
  CHECK_THROWS_AS(mix_states({a, c}, {0.6, 0.6}), std::invalid_argument);
}

TEST_CASE("diagonal partial trace agrees with the dense path") {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const int qubits = rng.uniform_int(2, 6);
    const StatePrefix s =
        make_diagonal(qubits, random_weight_map(rng, qubits, rng.uniform_int(1, 12)));
    for (int k = qubits; k > 1; --k) {
      const DensityMatrix dense_traced = partial_trace_last(level_matrix(s, k));
      const DensityMatrix sparse = level_matrix(s, k - 1);
      CHECK(max_abs(dense_traced.mat - sparse.mat) <= 1e-12);
    }
  }
}

TEST_CASE("coherence holds for every constructed prefix") {
  Rng rng(29);
  check_coherence(random_dense_state(rng, 5));
  check_coherence(make_bernoulli(0.3, 10));
  check_coherence(make_classical(std::string(24, '1'), 24));
  check_coherence(make_diagonal(8, random_weight_map(rng, 8, 20)));
  // All levels of a dense prefix also satisfy the density invariants.
  const StatePrefix s = random_dense_state(rng, 4);
  for (int k = 1; k <= 4; ++k) check_density(level_matrix(s, k));
}

TEST_CASE("mixing diagonal with dense densifies the result") {
  Rng rng(37);
  const StatePrefix diag = make_classical("0101", 4);
  const StatePrefix dense = random_dense_state(rng, 4);
  const StatePrefix mixed = mix_states({diag, dense}, {0.25, 0.75});
  CHECK(mixed.kind == StateKind::dense);
  check_coherence(mixed);
  for (int k = 1; k <= 4; ++k) {
    const CMatrix expected =
        0.25 * level_matrix(diag, k).mat + 0.75 * level_matrix(dense, k).mat;
    CHECK(max_abs(level_matrix(mixed, k).mat - expected) <= 1e-14);
  }
}

TEST_CASE("check_density rejects broken inputs") {
  CMatrix bad = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(make_density(1, 2.0 * bad), std::invalid_argument);  // trace 4
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  nonherm(0, 0) = 1.0;
  CHECK_THROWS_AS(make_density(1, nonherm), std::invalid_argument);
  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(make_density(1, negative), std::invalid_argument);
}
