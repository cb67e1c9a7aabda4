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

#include "qrl/lln.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qrl {

CMatrix lln_observable(int n, int i, double a, double b) {
  if (i < 1 || i > n) throw std::invalid_argument("lln_observable: position out of range");
  if (n > kMaxDenseQubits) throw std::invalid_argument("lln_observable: level too large");
  const std::int64_t dim = qubit_dim(n);
  CMatrix q = CMatrix::Zero(dim, dim);
  const int shift = n - i;  // bit i counted from the left
  for (std::int64_t idx = 0; idx < dim; ++idx)
    q(idx, idx) = ((idx >> shift) & 1) ? b : a;
  return q;
}

double site_one_probability(const StatePrefix& rho, int n, int i) {
  if (n < 1 || n > rho.depth) throw std::invalid_argument("site_one_probability: bad level");
  if (i < 1 || i > n) throw std::invalid_argument("site_one_probability: bad position");
  switch (rho.kind) {
    case StateKind::bernoulli:
      return 1.0 - rho.p;
    case StateKind::classical:
      return rho.bits[static_cast<std::size_t>(i - 1)] == '1' ? 1.0 : 0.0;
    case StateKind::diagonal: {
      double acc = 0.0;
      for (const auto& [sigma, w] : rho.diag_levels[static_cast<std::size_t>(n - 1)].weights)
        if (sigma[static_cast<std::size_t>(i - 1)] == '1') acc += w;
      return acc;
    }
    case StateKind::dense: {
      const CMatrix& mat = rho.dense_levels[static_cast<std::size_t>(n - 1)].mat;
      const int shift = n - i;
      double acc = 0.0;
      for (Eigen::Index idx = 0; idx < mat.rows(); ++idx)
        if ((idx >> shift) & 1) acc += mat(idx, idx).real();
      return acc;
    }
  }
  throw std::logic_error("site_one_probability: bad kind");
}

double lln_average(const StatePrefix& rho, int n, double a, double b) {
  if (n < 1 || n > rho.depth) throw std::invalid_argument("lln_average: level out of range");
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double p1 = site_one_probability(rho, n, i);
    acc += a * (1.0 - p1) + b * p1;
  }
  return acc / static_cast<double>(n);
}

double state_ones_tail(const StatePrefix& rho, int n, int min_ones) {
  if (n < 1 || n > rho.depth) throw std::invalid_argument("state_ones_tail: level out of range");
  if (min_ones <= 0) return 1.0;
  if (min_ones > n) return 0.0;
  switch (rho.kind) {
    case StateKind::bernoulli:
      return static_cast<double>(binomial_upper_tail(n, min_ones, 1.0 - rho.p));
    case StateKind::classical:
      return ones_count(std::string_view(rho.bits).substr(0, static_cast<std::size_t>(n))) >=
                     min_ones
                 ? 1.0
                 : 0.0;
    case StateKind::diagonal: {
      double acc = 0.0;
      for (const auto& [sigma, w] : rho.diag_levels[static_cast<std::size_t>(n - 1)].weights)
        if (ones_count(sigma) >= min_ones) acc += w;
      return acc;
    }
    case StateKind::dense: {
      const CMatrix& mat = rho.dense_levels[static_cast<std::size_t>(n - 1)].mat;
      double acc = 0.0;
      for (Eigen::Index idx = 0; idx < mat.rows(); ++idx)
        if (std::popcount(static_cast<std::uint64_t>(idx)) >= min_ones)
          acc += mat(idx, idx).real();
      return acc;
    }
  }
  throw std::logic_error("state_ones_tail: bad kind");
}

ChernoffTest chernoff_test(const Rational& p, double a, double b, double delta, int n_min,
                           int n_max) {
  if (p.num < 0 || p.num > p.den) throw std::invalid_argument("chernoff_test: p outside [0,1]");
  if (!(a < b)) throw std::invalid_argument("chernoff_test: requires a < b");
  if (!(delta > 0.0)) throw std::invalid_argument("chernoff_test: delta must be positive");
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("chernoff_test: bad level range");
  const double pv = p.value();
  const double big_m = a * pv + b * (1.0 - pv);
  if (!(big_m < 1.0))
    throw std::invalid_argument("chernoff_test: only the M < 1 branch is constructed");
  // The upper-deviation bound exp(-2 delta^2 n M^2/(b-a)^2) needs a positive
  // deviation delta * M; nonpositive M belongs to the transformed branches.
  if (!(big_m > 0.0))
    throw std::invalid_argument("chernoff_test: requires M > 0 on this branch");
  ChernoffTest test;
  test.p = p;
  test.a = a;
  test.b = b;
  test.delta = delta;
  test.big_m = big_m;
  test.n_min = n_min;
  test.n_max = n_max;
  const Rational p_one(p.den - p.num, p.den);
  for (int n = n_min; n <= n_max; ++n) {
    ChernoffLevel lvl;
    lvl.n = n;
    // Statistic a + (b-a) j / n with j ones exceeds (1+delta)M iff
    // j > n ((1+delta)M - a) / (b - a).
    const double cut = static_cast<double>(n) * ((1.0 + delta) * big_m - a) / (b - a);
    const int t = static_cast<int>(std::floor(cut)) + 1;  // least j with j > cut
    lvl.min_ones = std::max(t, 0);
    if (lvl.min_ones > n)
      lvl.min_ones = n + 1;  // empty level
    lvl.mass = static_cast<double>(binomial_upper_tail(n, lvl.min_ones, p_one));
    const double exponent =
        -2.0 * delta * delta * static_cast<double>(n) * big_m * big_m / ((b - a) * (b - a));
    lvl.bound = std::exp(exponent);
    test.levels.push_back(lvl);
  }
  return test;
}

namespace {

const ChernoffLevel& level_at(const ChernoffTest& test, int n) {
  if (n < test.n_min || n > test.n_max)
    throw std::invalid_argument("chernoff level out of range");
  return test.levels[static_cast<std::size_t>(n - test.n_min)];
}

}  // namespace

std::vector<std::string> chernoff_strings(const ChernoffTest& test, int n) {
  const ChernoffLevel& lvl = level_at(test, n);
  if (n > 20) throw std::invalid_argument("chernoff_strings: level too large to materialize");
  std::vector<std::string> out;
  const std::int64_t dim = qubit_dim(n);
  for (std::int64_t idx = 0; idx < dim; ++idx)
    if (std::popcount(static_cast<std::uint64_t>(idx)) >= lvl.min_ones)
      out.push_back(bits_of_index(static_cast<std::uint64_t>(idx), n));
  return out;
}

Projector chernoff_projector(const ChernoffTest& test, int n) {
  return projector_from_strings(n, chernoff_strings(test, n));
}

double markov_bound(double y_max, double mu, double ev,
                    const std::vector<std::pair<double, double>>& dist) {
  if (!(mu < ev)) throw std::invalid_argument("markov_bound: requires mu < EY");
  double total = 0.0, mean = 0.0, tail = 0.0;
  for (const auto& [value, prob] : dist) {
    if (prob < -1e-12) throw std::invalid_argument("markov_bound: negative probability");
    if (value > y_max + 1e-9) throw std::invalid_argument("markov_bound: support exceeds B");
    total += prob;
    mean += prob * value;
    if (value >= mu) tail += prob;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("markov_bound: probabilities must sum to one");
  if (std::abs(mean - ev) > 1e-7)
    throw std::invalid_argument("markov_bound: declared EY disagrees with the distribution");
  const double bound = (ev - mu) / (y_max - mu);
  if (tail < bound - 1e-9)
    throw std::runtime_error("markov_bound: inequality violated on the given distribution");
  return bound;
}

TraceMarkovResult trace_markov(const CMatrix& a_mat, const DensityMatrix& rho, double mu,
                               double m_lb, double b_ub, const Tolerances& tol) {
  if (a_mat.rows() != a_mat.cols() || a_mat.rows() != rho.mat.rows())
    throw std::invalid_argument("trace_markov: dimension mismatch");
  if (!is_hermitian(a_mat, tol.herm * std::max(1.0, max_abs(a_mat))))
    throw std::invalid_argument("trace_markov: A is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es((a_mat + a_mat.adjoint()) / 2.0);
  if (es.eigenvalues().maxCoeff() > b_ub + 1e-9)
    throw std::invalid_argument("trace_markov: eigenvalues exceed the declared bound B");
  const double expectation = (a_mat * rho.mat).trace().real();
  if (!(mu < m_lb) || !(m_lb <= expectation + 1e-12))
    throw std::invalid_argument("trace_markov: requires mu < m <= Tr(rho A)");

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) >= mu) keep.push_back(i);
  CMatrix cols(a_mat.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);

  TraceMarkovResult result;
  result.f_mu = projector_from_columns(rho.qubits, std::move(cols), tol);
  result.bound = (m_lb - mu) / (b_ub - mu);
  result.trace_value = trace_with(rho, result.f_mu);
  return result;
}

LlnFailureReport verify_lln_failure(const StatePrefix& rho, const ChernoffTest& test) {
  LlnFailureReport report;
  const double z = std::max(test.a, test.b);
  report.capture_floor = (1.0 - test.big_m) / (std::abs(z) + std::abs(3.0 * test.big_m));
  report.min_margin = 1e300;
  for (const ChernoffLevel& lvl : test.levels) {
    if (lvl.n > rho.depth) break;
    const double avg = lln_average(rho, lvl.n, test.a, test.b);
    if (!(avg > test.big_m + test.delta)) continue;
    LlnFailureRow row;
    row.n = lvl.n;
    row.average = avg;
    row.threshold = test.big_m + test.delta;
    row.mass = lvl.mass;
    row.trace_value = state_ones_tail(rho, lvl.n, lvl.min_ones);
    row.required = report.capture_floor * test.delta;
    row.margin = row.trace_value - row.required;
    report.min_margin = std::min(report.min_margin, row.margin);
    report.rows.push_back(row);
  }
  report.witness_count = static_cast<int>(report.rows.size());
  if (report.witness_count == 0) report.min_margin = 0.0;
  return report;
}

}  // namespace qrl
