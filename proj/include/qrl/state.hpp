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

#include <vector>

#include "qrl/density.hpp"

namespace qrl {

enum class StateKind { dense, diagonal, classical, bernoulli };

// One diagonal level: nonzero computational-basis weights, keyed by bitstring.
struct DiagonalLevel {
  int qubits = 0;
  std::map<std::string, double> weights;
};

// Finite stand-in for a state: levels 1..depth linked by the partial trace
// over the last qubit. Classical and Bernoulli prefixes are procedural (their
// weights are evaluated on demand), which keeps deep diagonal work cheap.
struct StatePrefix {
  StateKind kind = StateKind::dense;
  int depth = 0;
  std::vector<DensityMatrix> dense_levels;  // kind == dense, index k-1 holds level k
  std::vector<DiagonalLevel> diag_levels;   // kind == diagonal
  std::string bits;                         // kind == classical
  double p = 0.5;                           // kind == bernoulli
};

// The tracial state: level k is 2^{-k} I. Stored as the p = 1/2 product
// state, whose diagonal weights are exactly 2^{-k}.
StatePrefix make_tau(int depth);

// Point mass along an infinite bitstring; `bits` must be at least `depth` long.
StatePrefix make_classical(std::string_view bits, int depth);

// Product state with single-qubit weights (p, 1-p).
StatePrefix make_bernoulli(double p, int depth);

// Generic diagonal prefix from its deepest level; lower levels are derived by
// marginalization, so coherence holds by construction.
StatePrefix make_diagonal(int depth, std::map<std::string, double> top, const Tolerances& tol = {});

// Dense prefix from its deepest level, lower levels by partial trace.
StatePrefix dense_from_top(DensityMatrix top, const Tolerances& tol = {});

// Dense prefix from explicitly given levels (validated for coherence).
StatePrefix make_dense(std::vector<DensityMatrix> levels, const Tolerances& tol = {});

// Level-wise convex combination. All-diagonal inputs stay diagonal; any dense
// input densifies the result.
StatePrefix mix_states(const std::vector<StatePrefix>& states, const std::vector<double>& weights,
                       const Tolerances& tol = {});

bool is_diagonal_kind(const StatePrefix& s);

// <sigma| rho_k |sigma> for k = |sigma|. Works for every kind.
double state_weight(const StatePrefix& s, std::string_view sigma);

// Dense matrix of level k (1-based). Diagonal kinds densify; capped at 12 qubits.
DensityMatrix level_matrix(const StatePrefix& s, int k);

// Materialized weight map of level k; throws for dense kind and when the
// support would exceed the diagonal cap.
DiagonalLevel level_weights(const StatePrefix& s, int k);

// Verifies the partial-trace link between every pair of adjacent levels.
void check_coherence(const StatePrefix& s, const Tolerances& tol = {});

}  // namespace qrl
