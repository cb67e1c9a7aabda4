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

#include "qrl/convert.hpp"
#include "qrl/measures.hpp"
#include "qrl/random.hpp"

namespace qrl {

// Random subspace-approximation instance. All subspaces share a planted core
// direction, which keeps the delta-close class Q nonempty and samplable.
ApproxInstance random_approx_instance(Rng& rng, int max_qubits, int max_subspaces,
                                      const std::vector<double>& deltas, int max_m);

// Rejection-samples a density matrix from Q = { rho : Tr(rho M_k) > delta for
// >= m indices k }. The proposal mixes a pure state near the instance's core
// with noise; membership is checked directly. Empty optional after
// `max_attempts` failures.
std::optional<DensityMatrix> sample_q_member(Rng& rng, const ApproxInstance& inst,
                                             int max_attempts = 100000);

// Random valid q-MLT with dense members: nested level bases grown by lifting
// plus random orthogonal extensions, ranks capped by 2^{n-m}.
QuantumTest random_qmlt(Rng& rng, int depth, int num_members);

// Random coherent dense prefix (top level drawn, lower levels traced out).
StatePrefix random_dense_state(Rng& rng, int depth, int rank = 0);

struct PlantedSolovay {
  SolovayInstance instance;
  StatePrefix rho;       // fails every member at the instance's delta
  int plant_level = 0;   // level at which all members capture the state
};

// Solovay instance whose members all contain a common product branch, plus a
// state concentrated on that branch.
PlantedSolovay planted_solovay_instance(Rng& rng, int depth, int num_members,
                                        const Rational& delta);

struct PlantedDiagonalQmlt {
  QuantumTest qmlt;
  StatePrefix rho;  // diagonal, fails the test at delta
  double delta = 0.0;
  std::string branch;
};

// q-MLT together with a diagonal state failing it: members contain the
// branch |x restricted to n> at every level; the state carries weight alpha
// on the branch. Members are dense for depth <= 6 and string-based beyond.
PlantedDiagonalQmlt planted_diagonal_qmlt(Rng& rng, int depth, int num_members, double delta);

struct PlantedClassicalSolovay {
  ClassicalTestPrefix test;
  StatePrefix rho;
  double delta = 0.0;
  std::string branch;
};

PlantedClassicalSolovay planted_classical_solovay(Rng& rng, int depth, int num_members,
                                                  double delta);

}  // namespace qrl
