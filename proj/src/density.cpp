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

#include "qrl/density.hpp"

#include <Eigen/Eigenvalues>

namespace qrl {

DensityMatrix make_density(int qubits, CMatrix mat, const Tolerances& tol) {
  DensityMatrix rho{qubits, std::move(mat)};
  check_density(rho, tol);
  return rho;
}

void check_density(const DensityMatrix& rho, const Tolerances& tol) {
  const std::int64_t dim = qubit_dim(rho.qubits);
  if (rho.qubits > kMaxDenseQubits)
    throw std::invalid_argument("check_density: dense path capped at 12 qubits");
  if (rho.mat.rows() != dim || rho.mat.cols() != dim)
    throw std::invalid_argument("check_density: dimension does not match qubit count");
  if (!is_hermitian(rho.mat, tol.herm))
    throw std::invalid_argument("check_density: matrix is not Hermitian");
  if (std::abs(rho.mat.trace().real() - 1.0) > tol.trace ||
      std::abs(rho.mat.trace().imag()) > tol.trace)
    throw std::invalid_argument("check_density: trace is not one");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd)
    throw std::invalid_argument("check_density: matrix has a negative eigenvalue");
}

DensityMatrix partial_trace_last(const DensityMatrix& rho) {
  if (rho.qubits < 1) throw std::invalid_argument("partial_trace_last: needs at least 1 qubit");
  const std::int64_t half = qubit_dim(rho.qubits - 1);
  CMatrix out(half, half);
  for (std::int64_t i = 0; i < half; ++i)
    for (std::int64_t j = 0; j < half; ++j)
      out(i, j) = rho.mat(2 * i, 2 * j) + rho.mat(2 * i + 1, 2 * j + 1);
  return DensityMatrix{rho.qubits - 1, std::move(out)};
}

CMatrix tensor_with_identity(const Eigen::Ref<const CMatrix>& a) {
  const Eigen::Index n = a.rows();
  CMatrix out = CMatrix::Zero(2 * n, 2 * a.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(2 * i, 2 * j) = a(i, j);
      out(2 * i + 1, 2 * j + 1) = a(i, j);
    }
  return out;
}

}  // namespace qrl
