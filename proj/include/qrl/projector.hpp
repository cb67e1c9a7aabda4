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

#include <optional>
#include <vector>

#include "qrl/state.hpp"

namespace qrl {

// Hermitian projection on n qubits, stored by an orthonormal basis of its
// range. Projections onto computational-basis vectors carry the basis as a
// sorted bitstring list instead, which is what makes deep diagonal tests
// tractable.
struct Projector {
  int qubits = 0;
  CMatrix basis;  // dim x rank orthonormal columns (dense form)
  std::optional<std::vector<std::string>> strings;  // diagonal form, sorted
};

int rank_of(const Projector& p);
bool is_diagonal(const Projector& p);

Projector zero_projector(int qubits);
Projector full_projector(int qubits);

// Validates orthonormality of `columns` within tol.proj.
Projector projector_from_columns(int qubits, CMatrix columns, const Tolerances& tol = {});

// Projection onto span{ |sigma> : sigma in strings }.
Projector projector_from_strings(int qubits, std::vector<std::string> strings);

// Recovers an orthonormal range basis from a dense projection matrix
// (eigenvectors with eigenvalue > 1/2); validates Hermiticity and idempotence.
Projector projector_from_matrix(int qubits, const CMatrix& mat, const Tolerances& tol = {});

CMatrix dense_matrix(const Projector& p);
CMatrix basis_matrix(const Projector& p);

// P -> P (x) I2.
Projector lift(const Projector& p);

// <sigma| P |sigma>.
double diag_entry(const Projector& p, std::uint64_t index);

double trace_with(const DensityMatrix& rho, const Projector& p);

// Tr(rho_k P) with the cheapest route for the state/projector kinds involved.
double trace_with(const StatePrefix& s, int level, const Projector& p);

// mu_rho([[S]]) for a set of same-length strings (prefix-free by construction).
double state_set_mass(const StatePrefix& s, int level, const std::vector<std::string>& set);

}  // namespace qrl
