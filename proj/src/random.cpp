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

#include "qrl/random.hpp"

#include <set>

namespace qrl {

CVector random_unit_vector(Rng& rng, std::int64_t dim) {
  CVector v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  const double norm = v.norm();
  if (norm == 0.0) return random_unit_vector(rng, dim);
  return v / norm;
}

CMatrix random_gaussian_matrix(Rng& rng, std::int64_t rows, std::int64_t cols) {
  CMatrix a(rows, cols);
  for (std::int64_t j = 0; j < cols; ++j)
    for (std::int64_t i = 0; i < rows; ++i) a(i, j) = rng.complex_gaussian();
  return a;
}

CMatrix random_orthonormal(Rng& rng, std::int64_t dim, int cols) {
  return extend_orthonormal(rng, CMatrix(dim, 0), cols);
}

CMatrix extend_orthonormal(Rng& rng, const CMatrix& existing, int extra) {
  const std::int64_t dim = existing.rows();
  if (existing.cols() + extra > dim)
    throw std::invalid_argument("extend_orthonormal: more columns than the dimension");
  CMatrix out(dim, existing.cols() + extra);
  out.leftCols(existing.cols()) = existing;
  Eigen::Index filled = existing.cols();
  while (filled < out.cols()) {
    CVector v = random_unit_vector(rng, dim);
    // Two Gram-Schmidt sweeps keep the basis orthonormal to machine precision.
    for (int sweep = 0; sweep < 2; ++sweep)
      v -= out.leftCols(filled) * (out.leftCols(filled).adjoint() * v);
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    out.col(filled) = v / norm;
    ++filled;
  }
  return out;
}

DensityMatrix random_density(Rng& rng, int qubits, int rank) {
  const std::int64_t dim = qubit_dim(qubits);
  const std::int64_t r = rank <= 0 ? dim : std::min<std::int64_t>(rank, dim);
  const CMatrix a = random_gaussian_matrix(rng, dim, r);
  CMatrix m = a * a.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint()) / 2.0;
  return DensityMatrix{qubits, std::move(m)};
}

Projector random_projector(Rng& rng, int qubits, int rank) {
  const std::int64_t dim = qubit_dim(qubits);
  if (rank < 0 || rank > dim) throw std::invalid_argument("random_projector: bad rank");
  if (rank == 0) return zero_projector(qubits);
  return projector_from_columns(qubits, random_orthonormal(rng, dim, rank));
}

std::map<std::string, double> random_weight_map(Rng& rng, int qubits, int support) {
  const std::int64_t dim = qubit_dim(qubits);
  if (support < 1) throw std::invalid_argument("random_weight_map: empty support");
  std::set<std::string> keys;
  while (static_cast<int>(keys.size()) < support && static_cast<std::int64_t>(keys.size()) < dim)
    keys.insert(bits_of_index(static_cast<std::uint64_t>(rng.next_u64() %
                                                         static_cast<std::uint64_t>(dim)),
                              qubits));
  std::map<std::string, double> weights;
  double total = 0.0;
  for (const std::string& k : keys) {
    const double w = rng.uniform(0.05, 1.0);
    weights[k] = w;
    total += w;
  }
  for (auto& [k, w] : weights) w /= total;
  return weights;
}

}  // namespace qrl
