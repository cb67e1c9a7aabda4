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

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qrl {

using cx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Largest qubit counts the dense / diagonal code paths will materialize.
inline constexpr int kMaxDenseQubits = 12;
inline constexpr int kMaxDiagQubits = 24;

struct Tolerances {
  double herm = 1e-9;    // Hermiticity, entrywise
  double psd = 1e-9;     // eigenvalue floor for positive semidefiniteness
  double coh = 1e-9;     // partial-trace coherence between levels
  double trace = 1e-10;  // trace-one and weight-sum slack
  double proj = 1e-9;    // idempotence of projectors
  double nest = 1e-8;    // range inclusion between consecutive levels
  double mass = 1e-9;    // declared test-mass certificates
  double eps_max = 1e-10;  // strictness band for eigenvalue-vs-threshold tests

  // Named lookup used by the CLI's --tol KEY=VAL overrides.
  double& field(std::string_view name);
};

// Exact fraction for test orders and Bernoulli parameters. Thresholds built
// from these stay reproducible across runs.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline std::int64_t pow2_i64(int e) {
  if (e < 0 || e > 62) throw std::invalid_argument("pow2_i64: exponent out of range");
  return std::int64_t{1} << e;
}

inline double pow2(int e) { return std::ldexp(1.0, e); }

inline std::int64_t qubit_dim(int qubits) {
  if (qubits < 0 || qubits > 30) throw std::invalid_argument("qubit_dim: bad qubit count");
  return std::int64_t{1} << qubits;
}

// Basis-index convention: |b1 b2 ... bn> maps to the integer with b1 as the
// most significant bit, so appending a qubit doubles the index.
std::uint64_t index_of_bits(std::string_view bits);
std::string bits_of_index(std::uint64_t index, int length);
int ones_count(std::string_view bits);

bool is_bitstring(std::string_view s);

double max_abs(const Eigen::Ref<const CMatrix>& a);
bool is_hermitian(const Eigen::Ref<const CMatrix>& a, double tol);

}  // namespace qrl
