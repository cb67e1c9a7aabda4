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

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qrl/generate.hpp"
#include "qrl/lln.hpp"

using namespace qrl;

TEST_CASE("exact binomial coefficients") {
  CHECK(binom64(0, 0) == 1);
  CHECK(binom64(5, 2) == 10);
  CHECK(binom64(20, 13) == 77520);
  CHECK(binom64(64, 32) == 1832624140942590534ull);
  CHECK_THROWS_AS(binom64(65, 1), std::invalid_argument);
}

TEST_CASE("binomial tails match full enumeration") {
  for (int n = 1; n <= 12; ++n)
    for (int t = 0; t <= n + 1; ++t) {
      const double p1 = 0.3;
      const double enumerated = oracle::enumerated_ones_tail(n, t, p1);
      CHECK(static_cast<double>(binomial_upper_tail(n, t, p1)) ==
            doctest::Approx(enumerated).epsilon(1e-12));
      const double rational = static_cast<double>(binomial_upper_tail(n, t, Rational(3, 10)));
      CHECK(rational == doctest::Approx(enumerated).epsilon(1e-12));
    }
}

TEST_CASE("big-integer and log-space paths agree across the switchover") {
  const Rational third(1, 3);
  for (int n : {60, 64}) {
    const long double exact = binomial_upper_tail(n, n / 2, third);
    // Same tail through the log-space branch (forced by the double overload
    // at n > 64 only, so compare against the direct long double sum instead).
    long double direct = 0.0L;
    for (int j = n / 2; j <= n; ++j)
      direct += static_cast<long double>(binom64(n, j)) * std::pow(1.0L / 3.0L, j) *
                std::pow(2.0L / 3.0L, n - j);
    CHECK(static_cast<double>(exact) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
  }
  // n > 64 switches to log-space; sanity against the n = 64 neighborhood.
  const double big = static_cast<double>(binomial_upper_tail(80, 40, third));
  CHECK(big > 0.0);
  CHECK(big < 0.01);
}

TEST_CASE("lln averages on canonical states") {
  const StatePrefix tau = make_tau(20);
  for (int n = 1; n <= 20; ++n)
    CHECK(std::abs(lln_average(tau, n, 0.0, 1.0) - 0.5) <= 1e-12);

  const StatePrefix ones = make_classical(std::string(10, '1'), 10);
  CHECK(lln_average(ones, 10, 0.0, 1.0) == doctest::Approx(1.0));

  const double p = 0.37, a = -0.25, b = 0.75;
  const StatePrefix bp = make_bernoulli(p, 15);
  for (int n = 1; n <= 15; ++n)
    CHECK(std::abs(lln_average(bp, n, a, b) - (a * p + b * (1.0 - p))) <= 1e-12);
}

TEST_CASE("diagonal averages agree with dense observables") {
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const StatePrefix rho = make_diagonal(n, random_weight_map(rng, n, rng.uniform_int(2, 10)));
    const DensityMatrix dense = level_matrix(rho, n);
    const double a = rng.uniform(-1.0, 0.5), b = rng.uniform(0.5, 1.5);
    double direct = 0.0;
    for (int i = 1; i <= n; ++i)
      direct += oracle::naive_trace_product(dense.mat, lln_observable(n, i, a, b));
    direct /= n;
    CHECK(std::abs(lln_average(rho, n, a, b) - direct) <= 1e-12);

    const StatePrefix dense_state = random_dense_state(rng, n);
    double direct_dense = 0.0;
    for (int i = 1; i <= n; ++i)
      direct_dense += oracle::naive_trace_product(level_matrix(dense_state, n).mat,
                                                  lln_observable(n, i, a, b));
    direct_dense /= n;
    CHECK(std::abs(lln_average(dense_state, n, a, b) - direct_dense) <= 1e-10);
  }
}

TEST_CASE("chernoff test at p=1/2, delta=0.2, n=20: frozen tail value") {
  const ChernoffTest test = chernoff_test(Rational(1, 2), 0.0, 1.0, 0.2, 20, 20);
  const ChernoffLevel& lvl = test.levels.front();
  // #ones/20 > 0.6 means at least 13 ones; the exact tail is 137980/2^20.
  CHECK(lvl.min_ones == 13);
  CHECK(lvl.mass == doctest::Approx(137980.0 / 1048576.0).epsilon(1e-15));
  CHECK(lvl.bound == doctest::Approx(std::exp(-0.4)).epsilon(1e-12));
  CHECK(lvl.mass <= lvl.bound);
  // Enumeration oracle agrees.
  CHECK(lvl.mass == doctest::Approx(oracle::enumerated_ones_tail(20, 13, 0.5)).epsilon(1e-12));
}

TEST_CASE("unattainable thresholds give empty test levels") {
  // (1+delta) M above max(a,b) empties C_n.
  const ChernoffTest test = chernoff_test(Rational(1, 2), 0.0, 1.0, 1.5, 5, 8);
  for (const ChernoffLevel& lvl : test.levels) {
    CHECK(lvl.min_ones == lvl.n + 1);
    CHECK(lvl.mass == doctest::Approx(0.0));
  }
}

TEST_CASE("the all-ones string sits in every attainable level") {
  const ChernoffTest test = chernoff_test(Rational(1, 2), 0.0, 1.0, 0.2, 1, 24);
  const StatePrefix ones = make_classical(std::string(24, '1'), 24);
  for (const ChernoffLevel& lvl : test.levels) {
    CHECK(lvl.min_ones <= lvl.n);
    CHECK(state_ones_tail(ones, lvl.n, lvl.min_ones) == doctest::Approx(1.0));
  }
}

TEST_CASE("combinatorial level sets equal the eigenspace of the averaged observable") {
  const double delta = 0.2;
  const ChernoffTest test = chernoff_test(Rational(1, 2), 0.0, 1.0, delta, 2, 8);
  for (int n = 2; n <= 8; ++n) {
    const std::vector<std::string> combinatorial = chernoff_strings(test, n);
    CMatrix a_n = CMatrix::Zero(qubit_dim(n), qubit_dim(n));
    for (int i = 1; i <= n; ++i) a_n += lln_observable(n, i, 0.0, 1.0);
    a_n /= static_cast<double>(n);
    std::vector<std::string> eigen_side;
    for (std::int64_t idx = 0; idx < qubit_dim(n); ++idx)
      if (a_n(idx, idx).real() > (1.0 + delta) * 0.5)
        eigen_side.push_back(bits_of_index(static_cast<std::uint64_t>(idx), n));
    CHECK(combinatorial == eigen_side);
  }
}

TEST_CASE("markov bound on canonical distributions") {
  // Constant at the cap: the bound is tight at one.
  CHECK(markov_bound(1.0, 0.4, 1.0, {{1.0, 1.0}}) == doctest::Approx(1.0));
  // Fair coin on {0,1} with mu = 0.4: bound 1/6, actual tail 1/2.
  CHECK(markov_bound(1.0, 0.4, 0.5, {{0.0, 0.5}, {1.0, 0.5}}) == doctest::Approx(1.0 / 6.0));
  CHECK_THROWS_AS(markov_bound(1.0, 0.6, 0.5, {{0.0, 0.5}, {1.0, 0.5}}), std::invalid_argument);
}

TEST_CASE("markov bound never exceeds the actual tail on random distributions") {
  Rng rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const int support = rng.uniform_int(2, 10);
    std::vector<std::pair<double, double>> dist;
    double total = 0.0, vmax = -1e300, vmin = 1e300;
    for (int s = 0; s < support; ++s) {
      const double v = rng.uniform(-2.0, 2.0);
      const double pr = rng.uniform(0.01, 1.0);
      dist.emplace_back(v, pr);
      total += pr;
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
    double ev = 0.0;
    for (auto& [v, pr] : dist) {
      pr /= total;
      ev += v * pr;
    }
    if (ev - vmin < 1e-6) continue;
    const double mu = ev - rng.uniform(0.05, 0.95) * (ev - vmin);
    double tail = 0.0;
    for (const auto& [v, pr] : dist)
      if (v >= mu) tail += pr;
    CHECK(tail >= markov_bound(vmax, mu, ev, dist) - 1e-9);
  }
}

TEST_CASE("trace markov on diagonal toy cases") {
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 1) = 1.0;
  const DensityMatrix rho{1, CMatrix::Identity(2, 2) / 2.0};
  const TraceMarkovResult res = trace_markov(a, rho, 0.4, 0.5, 1.0);
  CHECK(res.trace_value == doctest::Approx(0.5));
  CHECK(res.bound == doctest::Approx(1.0 / 6.0));
  CHECK(rank_of(res.f_mu) == 1);

  const CMatrix scaled = 0.8 * CMatrix::Identity(4, 4);
  const DensityMatrix rho2{2, CMatrix::Identity(4, 4) / 4.0};
  const TraceMarkovResult res2 = trace_markov(scaled, rho2, 0.3, 0.6, 0.8);
  CHECK(rank_of(res2.f_mu) == 4);
  CHECK(res2.trace_value == doctest::Approx(1.0));
  CHECK(res2.bound <= 1.0);
}

TEST_CASE("trace markov reduces to the scalar bound for diagonal pairs") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const int qubits = rng.uniform_int(1, 4);
    const std::int64_t dim = qubit_dim(qubits);
    CMatrix a = CMatrix::Zero(dim, dim);
    std::vector<std::pair<double, double>> dist;
    std::map<std::string, double> weights = random_weight_map(rng, qubits, static_cast<int>(dim));
    CMatrix rho_mat = CMatrix::Zero(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      const double v = rng.uniform(-1.0, 1.0);
      a(i, i) = v;
      const std::string key = bits_of_index(static_cast<std::uint64_t>(i), qubits);
      const double pr = weights.count(key) ? weights[key] : 0.0;
      rho_mat(i, i) = pr;
      dist.emplace_back(v, pr);
    }
    double ev = 0.0, vmax = -1e300;
    for (const auto& [v, pr] : dist) {
      ev += v * pr;
      vmax = std::max(vmax, v);
    }
    double vmin = 1e300;
    for (const auto& [v, pr] : dist) vmin = std::min(vmin, v);
    if (ev - vmin < 1e-6) continue;
    const double mu = ev - rng.uniform(0.1, 0.9) * (ev - vmin);
    const double m_lb = ev;
    const TraceMarkovResult op = trace_markov(a, DensityMatrix{qubits, rho_mat}, mu, m_lb, vmax);
    const double scalar = markov_bound(vmax, mu, ev, dist);
    CHECK(op.bound == doctest::Approx(scalar).epsilon(1e-10));
    double tail = 0.0;
    for (const auto& [v, pr] : dist)
      if (v >= mu) tail += pr;
    CHECK(op.trace_value == doctest::Approx(tail).epsilon(1e-10));
  }
}

TEST_CASE("trace markov holds on random filtered operator pairs") {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const int qubits = rng.uniform_int(1, 6);
    const std::int64_t dim = qubit_dim(qubits);
    CMatrix g = random_gaussian_matrix(rng, dim, dim);
    CMatrix a = (g + g.adjoint()) / 2.0;
    a /= std::max(1.0, max_abs(a));
    const DensityMatrix rho = random_density(rng, qubits);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
    const double expectation = (a * rho.mat).trace().real();
    const double bottom = es.eigenvalues().minCoeff();
    if (expectation - bottom < 1e-6) continue;
    const double m_lb = expectation - rng.uniform(0.0, 0.1) * (expectation - bottom);
    const double mu = m_lb - rng.uniform(0.05, 0.7) * (expectation - bottom);
    const TraceMarkovResult res = trace_markov(a, rho, mu, m_lb, es.eigenvalues().maxCoeff());
    CHECK(res.trace_value >= res.bound - 1e-8);
  }
}

TEST_CASE("verify_lln_failure ignores the conforming state and flags deviants") {
  const ChernoffTest test = chernoff_test(Rational(1, 2), 0.0, 1.0, 0.2, 1, 30);
  const StatePrefix conforming = make_bernoulli(0.5, 24);
  const LlnFailureReport none = verify_lln_failure(conforming, test);
  CHECK(none.witness_count == 0);

  const StatePrefix ones = make_classical(std::string(24, '1'), 24);
  const LlnFailureReport all = verify_lln_failure(ones, test);
  CHECK(all.witness_count > 0);
  for (const LlnFailureRow& row : all.rows) {
    CHECK(row.trace_value == doctest::Approx(1.0));
    CHECK(row.margin >= 0.0);
  }

  const StatePrefix deviant = make_bernoulli(0.2, 24);  // ones rate 0.8
  const LlnFailureReport planted = verify_lln_failure(deviant, test);
  CHECK(planted.witness_count > 0);
  CHECK(planted.min_margin >= 0.0);
}

TEST_CASE("out-of-range levels and broken preconditions are rejected") {
  const StatePrefix tau = make_tau(4);
  CHECK_THROWS_AS(lln_average(tau, 5, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lln_average(tau, 0, 0.0, 1.0), std::invalid_argument);

  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 1) = 1.0;
  const DensityMatrix rho{1, CMatrix::Identity(2, 2) / 2.0};
  // mu >= m violates the ordering precondition.
  CHECK_THROWS_AS(trace_markov(a, rho, 0.5, 0.5, 1.0), std::invalid_argument);
  // declared bound below the top eigenvalue.
  CHECK_THROWS_AS(trace_markov(a, rho, 0.1, 0.4, 0.5), std::invalid_argument);
  // m above the actual expectation.
  CHECK_THROWS_AS(trace_markov(a, rho, 0.1, 0.9, 1.0), std::invalid_argument);
}

TEST_CASE("chernoff parameter validation") {
  CHECK_THROWS_AS(chernoff_test(Rational(1, 2), 1.0, 0.0, 0.1, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_test(Rational(1, 2), 0.0, 1.0, -0.1, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_test(Rational(1, 2), 0.0, 3.0, 0.1, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_test(Rational(1, 2), 0.0, 1.0, 0.1, 5, 2), std::invalid_argument);
  // M <= 0 belongs to the affinely transformed branches.
  CHECK_THROWS_AS(chernoff_test(Rational(1, 2), -1.0, 0.5, 0.1, 1, 5), std::invalid_argument);
}
