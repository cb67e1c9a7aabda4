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

#include "qrl/projector.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace qrl {

int rank_of(const Projector& p) {
  if (p.strings) return static_cast<int>(p.strings->size());
  return static_cast<int>(p.basis.cols());
}

bool is_diagonal(const Projector& p) { return p.strings.has_value(); }

Projector zero_projector(int qubits) {
  Projector p;
  p.qubits = qubits;
  p.strings = std::vector<std::string>{};
  return p;
}

Projector full_projector(int qubits) {
  if (qubits > kMaxDiagQubits) throw std::invalid_argument("full_projector: too many qubits");
  std::vector<std::string> all;
  const std::int64_t dim = qubit_dim(qubits);
  if (dim > (1 << 20)) throw std::invalid_argument("full_projector: level too large");
  all.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < dim; ++i) all.push_back(bits_of_index(static_cast<std::uint64_t>(i), qubits));
  return projector_from_strings(qubits, std::move(all));
}

Projector projector_from_columns(int qubits, CMatrix columns, const Tolerances& tol) {
  const std::int64_t dim = qubit_dim(qubits);
  if (columns.rows() != dim)
    throw std::invalid_argument("projector_from_columns: row count does not match qubit count");
  if (columns.cols() > 0) {
    const CMatrix gram = columns.adjoint() * columns;
    if (max_abs(gram - CMatrix::Identity(columns.cols(), columns.cols())) > tol.proj * 10)
      throw std::invalid_argument("projector_from_columns: columns are not orthonormal");
  }
  Projector p;
  p.qubits = qubits;
  p.basis = std::move(columns);
  return p;
}

Projector projector_from_strings(int qubits, std::vector<std::string> strings) {
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  for (const std::string& s : strings)
    if (static_cast<int>(s.size()) != qubits || !is_bitstring(s))
      throw std::invalid_argument("projector_from_strings: bad basis string");
  Projector p;
  p.qubits = qubits;
  p.strings = std::move(strings);
  return p;
}

Projector projector_from_matrix(int qubits, const CMatrix& mat, const Tolerances& tol) {
  const std::int64_t dim = qubit_dim(qubits);
  if (mat.rows() != dim || mat.cols() != dim)
    throw std::invalid_argument("projector_from_matrix: dimension mismatch");
  if (!is_hermitian(mat, tol.herm))
    throw std::invalid_argument("projector_from_matrix: matrix is not Hermitian");
  if (max_abs(mat * mat - mat) > tol.proj * 100)
    throw std::invalid_argument("projector_from_matrix: matrix is not idempotent");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  const double tr = mat.trace().real();
  if (std::abs(tr - static_cast<double>(keep.size())) > 1e-6)
    throw std::invalid_argument("projector_from_matrix: trace does not match rank");
  CMatrix cols(dim, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  Projector p;
  p.qubits = qubits;
  p.basis = std::move(cols);
  return p;
}

CMatrix dense_matrix(const Projector& p) {
  const std::int64_t dim = qubit_dim(p.qubits);
  if (p.qubits > kMaxDenseQubits)
    throw std::invalid_argument("dense_matrix: projector too large to densify");
  if (p.strings) {
    CMatrix out = CMatrix::Zero(dim, dim);
    for (const std::string& s : *p.strings) {
      const auto idx = static_cast<Eigen::Index>(index_of_bits(s));
      out(idx, idx) = 1.0;
    }
    return out;
  }
  if (p.basis.cols() == 0) return CMatrix::Zero(dim, dim);
  return p.basis * p.basis.adjoint();
}

CMatrix basis_matrix(const Projector& p) {
  if (!p.strings) return p.basis;
  const std::int64_t dim = qubit_dim(p.qubits);
  if (p.qubits > kMaxDenseQubits)
    throw std::invalid_argument("basis_matrix: projector too large to densify");
  CMatrix out = CMatrix::Zero(dim, static_cast<Eigen::Index>(p.strings->size()));
  for (std::size_t j = 0; j < p.strings->size(); ++j)
    out(static_cast<Eigen::Index>(index_of_bits((*p.strings)[j])), static_cast<Eigen::Index>(j)) = 1.0;
  return out;
}

Projector lift(const Projector& p) {
  Projector out;
  out.qubits = p.qubits + 1;
  if (p.strings) {
    std::vector<std::string> lifted;
    lifted.reserve(p.strings->size() * 2);
    for (const std::string& s : *p.strings) {
      lifted.push_back(s + "0");
      lifted.push_back(s + "1");
    }
    out.strings = std::move(lifted);
    return out;
  }
  out.basis = tensor_with_identity(p.basis);
  return out;
}

double diag_entry(const Projector& p, std::uint64_t index) {
  if (p.strings) {
    const std::string s = bits_of_index(index, p.qubits);
    return std::binary_search(p.strings->begin(), p.strings->end(), s) ? 1.0 : 0.0;
  }
  return p.basis.row(static_cast<Eigen::Index>(index)).squaredNorm();
}

double trace_with(const DensityMatrix& rho, const Projector& p) {
  if (rho.qubits != p.qubits) throw std::invalid_argument("trace_with: qubit mismatch");
  if (p.strings) {
    double acc = 0.0;
    for (const std::string& s : *p.strings) {
      const auto idx = static_cast<Eigen::Index>(index_of_bits(s));
      acc += rho.mat(idx, idx).real();
    }
    return acc;
  }
  if (p.basis.cols() == 0) return 0.0;
  return (p.basis.adjoint() * rho.mat * p.basis).trace().real();
}

double trace_with(const StatePrefix& s, int level, const Projector& p) {
  if (level < 1 || level > s.depth) throw std::invalid_argument("trace_with: level out of range");
  if (p.qubits != level) throw std::invalid_argument("trace_with: projector level mismatch");
  if (p.strings) {
    double acc = 0.0;
    for (const std::string& sigma : *p.strings) acc += state_weight(s, sigma);
    return acc;
  }
  if (s.kind == StateKind::dense) return trace_with(s.dense_levels[static_cast<std::size_t>(level - 1)], p);
  if (s.kind == StateKind::classical) {
    const std::string_view sigma = std::string_view(s.bits).substr(0, static_cast<std::size_t>(level));
    return diag_entry(p, index_of_bits(sigma));
  }
  if (s.kind == StateKind::diagonal) {
    double acc = 0.0;
    for (const auto& [sigma, w] : s.diag_levels[static_cast<std::size_t>(level - 1)].weights)
      acc += w * diag_entry(p, index_of_bits(sigma));
    return acc;
  }
  // Bernoulli against a dense projector: sweep the full diagonal.
  if (level > kMaxDenseQubits + 8)
    throw std::invalid_argument("trace_with: Bernoulli level too deep for a dense projector");
  double acc = 0.0;
  const std::int64_t dim = qubit_dim(level);
  for (std::int64_t i = 0; i < dim; ++i)
    acc += state_weight(s, bits_of_index(static_cast<std::uint64_t>(i), level)) *
           diag_entry(p, static_cast<std::uint64_t>(i));
  return acc;
}

double state_set_mass(const StatePrefix& s, int level, const std::vector<std::string>& set) {
  double acc = 0.0;
  for (const std::string& sigma : set) {
    if (static_cast<int>(sigma.size()) != level)
      throw std::invalid_argument("state_set_mass: string length mismatch");
    acc += state_weight(s, sigma);
  }
  return acc;
}

}  // namespace qrl
