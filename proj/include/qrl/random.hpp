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

#include <random>

#include "qrl/projector.hpp"

namespace qrl {

// Seeded generator with hand-rolled uniform/gaussian transforms so that a
// seed pins every report byte regardless of the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  double gaussian() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  cx complex_gaussian() { return cx(gaussian(), gaussian()); }

 private:
  std::mt19937_64 engine_;
};

CVector random_unit_vector(Rng& rng, std::int64_t dim);
CMatrix random_gaussian_matrix(Rng& rng, std::int64_t rows, std::int64_t cols);

// Orthonormal columns spanning a random subspace (modified Gram-Schmidt over
// gaussian draws).
CMatrix random_orthonormal(Rng& rng, std::int64_t dim, int cols);

// Extends `existing` orthonormal columns by `extra` random orthonormal ones.
CMatrix extend_orthonormal(Rng& rng, const CMatrix& existing, int extra);

// rho = A A* / Tr(A A*) with gaussian A of the given rank (0 = full rank).
DensityMatrix random_density(Rng& rng, int qubits, int rank = 0);

Projector random_projector(Rng& rng, int qubits, int rank);

// Random diagonal level with the given support size, normalized.
std::map<std::string, double> random_weight_map(Rng& rng, int qubits, int support);

}  // namespace qrl
