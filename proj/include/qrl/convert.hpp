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

#include "qrl/approx.hpp"

namespace qrl {

// A finitized quantum Solovay test: members S^k with S^k_n = 0 for k > n and
// total tau mass below one.
struct SolovayInstance {
  int depth = 0;
  std::vector<QSigmaPrefix> members;
  Rational delta{1, 2};
};

void check_solovay_instance(const SolovayInstance& inst, const Tolerances& tol = {});

double total_mass(const SolovayInstance& inst);

struct ConvertTraceRow {
  int m = 0;
  int n = 0;
  int basis_size = 0;   // |C^m_n|
  int accepted = 0;     // vectors added by the greedy extension at this level
  double tau_partial = 0.0;  // 2^{-n} rank(G^m_n)
  double min_seed_margin = 0.0;  // min over lifted seeds of <u|V_n|u> - lambda
  double min_lift_drop = 0.0;    // min of <u|V_n|u> - <parent|V_{n-1}|parent>
  bool seed_breach = false;      // a lifted seed fell below lambda (tolerance dust)
};

struct ConvertResult {
  QuantumTest test;  // qMLT with member m bounded by (4/delta) 2^{-m}
  std::vector<ConvertTraceRow> trace;
  std::vector<std::string> warnings;
};

// Builds the Martin-Lof members G^m, m = 1..m_max: level by level, the
// previous maximal set is lifted by both basis qubits and extended to a
// maximal orthonormal subset of the vectors whose total overlap with
// sum_{k<=n} S^k_n exceeds 2^m delta / 4.
ConvertResult solovay_to_mlt(const SolovayInstance& inst, int m_max = 4,
                             const Tolerances& tol = {});

struct TransferReport {
  bool hypothesis_met = false;  // some level has >= 2^m members above delta
  int witness_level = 0;
  int failing_members = 0;
  double g_value = 0.0;  // Tr(rho_n G^m_n) at the witness level
  double floor = 0.0;    // delta / 4
  double margin = 0.0;   // g_value - floor
};

// Checks that failing the Solovay instance at delta transfers to failing the
// constructed member G^m at delta/4.
TransferReport verify_failure_transfer(const StatePrefix& rho, const SolovayInstance& inst,
                                       const QuantumTest& mlt, int m);

}  // namespace qrl
