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

#pragma once

#include "qrl/binomial.hpp"
#include "qrl/projector.hpp"

namespace qrl {

// The single-site observable diag(a,b) at position i of an n-qubit register,
// materialized densely (cross-checks only; every production path stays
// diagonal).
CMatrix lln_observable(int n, int i, double a, double b);

// n^{-1} sum_{i<=n} Tr(rho_n Q^n_i). Product kinds evaluate exactly from the
// per-site marginals.
double lln_average(const StatePrefix& rho, int n, double a, double b);

// Probability that the i-th bit of level-n of rho is one.
double site_one_probability(const StatePrefix& rho, int n, int i);

// Mass rho_n places on strings with at least `min_ones` ones.
double state_ones_tail(const StatePrefix& rho, int n, int min_ones);

struct ChernoffLevel {
  int n = 0;
  int min_ones = 0;   // smallest #ones in C_n; n+1 encodes an empty level
  double mass = 0.0;  // b_p(S_n), exact binomial tail
  double bound = 0.0; // exp(-2 delta^2 n M^2 / (b-a)^2)
};

// Deviation test: C_n = { sigma : n^{-1}[b #ones + a #zeros] > (1+delta) M }
// with M = a p + b (1-p). Levels are stored by their ones-count threshold;
// string sets and projections are materialized on demand for small n.
struct ChernoffTest {
  Rational p{1, 2};
  double a = 0.0;
  double b = 1.0;
  double delta = 0.1;
  double big_m = 0.5;  // M
  int n_min = 1;
  int n_max = 1;
  std::vector<ChernoffLevel> levels;
};

// Requires a < b, M < 1, delta > 0 (the upper-deviation branch; the other
// branches reduce to it by an affine change of a and b).
ChernoffTest chernoff_test(const Rational& p, double a, double b, double delta, int n_min,
                           int n_max);

std::vector<std::string> chernoff_strings(const ChernoffTest& test, int n);
Projector chernoff_projector(const ChernoffTest& test, int n);

// Lower bound (EY - mu)/(B - mu) for P{Y >= mu}; validates it against the
// explicit finite distribution handed in as (value, probability) pairs.
double markov_bound(double y_max, double mu, double ev,
                    const std::vector<std::pair<double, double>>& dist);

struct TraceMarkovResult {
  Projector f_mu;      // eigenspace of A with eigenvalue >= mu
  double bound = 0.0;  // (m - mu)/(B - mu)
  double trace_value = 0.0;  // Tr(rho F_mu)
};

// Operator version: F_mu spans the eigenvectors of `a_mat` at or above mu;
// then Tr(rho F_mu) >= (m_lb - mu)/(b_ub - mu).
TraceMarkovResult trace_markov(const CMatrix& a_mat, const DensityMatrix& rho, double mu,
                               double m_lb, double b_ub, const Tolerances& tol = {});

struct LlnFailureRow {
  int n = 0;
  double average = 0.0;    // n^{-1} sum Tr(rho_n Q^n_i)
  double threshold = 0.0;  // M + delta (witness condition)
  double mass = 0.0;       // b_p(S_n)
  double trace_value = 0.0;  // Tr(rho_n S_n)
  double required = 0.0;     // C delta
  double margin = 0.0;
};

struct LlnFailureReport {
  double capture_floor = 0.0;  // C = (1-M)/(|z|+|3M|)
  std::vector<LlnFailureRow> rows;  // witnessing levels only
  int witness_count = 0;
  double min_margin = 0.0;
};

// At every level where the running average exceeds M + delta, the test level
// captures at least C delta of the state.
LlnFailureReport verify_lln_failure(const StatePrefix& rho, const ChernoffTest& test);

}  // namespace qrl
