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

// Test-only reference routines, kept independent of the library paths they
// check: scalar-loop traces, SVD ranks, exhaustive enumerations.

#pragma once

#include <string>
#include <vector>

#include <Eigen/SVD>

#include "qrl/state.hpp"

namespace qrl::oracle {

// Tr(A B) by explicit scalar loops.
inline double naive_trace_product(const CMatrix& a, const CMatrix& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      acc += (a(i, j) * b(j, i)).real();
  return acc;
}

// Rank via singular values, a different decomposition than the library's
// Hermitian eigensolves.
inline int svd_rank(const CMatrix& m, double cutoff = 1e-8) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cutoff) ++rank;
  return rank;
}

// Max over subspace vectors of the residual after projecting onto span(b).
inline double span_residual(const CMatrix& vectors, const CMatrix& b_dense) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    const CVector v = vectors.col(j);
    worst = std::max(worst, (v - b_dense * v).norm());
  }
  return worst;
}

// P[#ones >= t] for independent bits with P(one) = p1, by full enumeration.
inline double enumerated_ones_tail(int n, int t, double p1) {
  double acc = 0.0;
  for (std::int64_t idx = 0; idx < (std::int64_t{1} << n); ++idx) {
    int ones = 0;
    for (int b = 0; b < n; ++b) ones += static_cast<int>((idx >> b) & 1);
    if (ones >= t) {
      double w = 1.0;
      for (int b = 0; b < n; ++b) w *= ((idx >> b) & 1) ? p1 : (1.0 - p1);
      acc += w;
    }
  }
  return acc;
}

// <sigma|F|sigma> via an explicit basis vector and scalar products.
inline double quadratic_form_at_basis(const CMatrix& f, std::uint64_t index) {
  CVector e = CVector::Zero(f.rows());
  e(static_cast<Eigen::Index>(index)) = 1.0;
  cx acc = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index j = 0; j < f.cols(); ++j)
      acc += std::conj(e(i)) * f(i, j) * e(j);
  return acc.real();
}

inline std::vector<std::string> all_bitstrings(int n) {
  std::vector<std::string> out;
  for (std::int64_t i = 0; i < (std::int64_t{1} << n); ++i)
    out.push_back(bits_of_index(static_cast<std::uint64_t>(i), n));
  return out;
}

}  // namespace qrl::oracle
