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

#include "qrl/types.hpp"

namespace qrl {

// Trace-one positive Hermitian matrix on n qubits.
struct DensityMatrix {
  int qubits = 0;
  CMatrix mat;
};

// Validating constructor; throws std::invalid_argument when `mat` is not a
// density matrix within `tol`. Internal operations that preserve the
// invariants build the struct directly instead.
DensityMatrix make_density(int qubits, CMatrix mat, const Tolerances& tol = {});

void check_density(const DensityMatrix& rho, const Tolerances& tol = {});

// Discards the last qubit: out(i,j) = in(2i,2j) + in(2i+1,2j+1).
DensityMatrix partial_trace_last(const DensityMatrix& rho);

// P -> P (x) I2, one qubit appended.
CMatrix tensor_with_identity(const Eigen::Ref<const CMatrix>& a);

}  // namespace qrl
