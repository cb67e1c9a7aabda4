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

#include "qrl/projector.hpp"

namespace qrl {

// Finite prefix of a quantum Sigma-0-1 set: projections p_1..p_N with
// range(p_k (x) I) included in range(p_{k+1}).
struct QSigmaPrefix {
  int depth = 0;
  std::vector<Projector> projs;  // projs[k-1] acts on k qubits
};

void check_qsigma(const QSigmaPrefix& g, const Tolerances& tol = {});

// 2^{-N} rank(p_N); the last level is the best finite approximation since
// 2^{-k} rank(p_k) is nondecreasing under nesting.
double tau_value(const QSigmaPrefix& g);

// max_{k <= min depth} Tr(rho_k p_k); nondecreasing in k for valid prefixes.
double rho_value(const StatePrefix& rho, const QSigmaPrefix& g);

enum class Discipline { qmlt, qsolovay, strong_solovay, qschnorr, p_schnorr };

std::string discipline_name(Discipline d);
Discipline discipline_from_name(std::string_view name);

// A quantum test: prefix members for MLT/Solovay disciplines, single
// projections for the strong Solovay / Schnorr family. `mass_bounds` is the
// per-member mass certificate for MLT-type tests (member j, counting from
// `first_index`, defaults to mass 2^{-(first_index+j)}); `partial_sums` is
// the cumulative mass certificate for the summable disciplines.
struct QuantumTest {
  Discipline discipline = Discipline::qmlt;
  int first_index = 1;
  double p = 0.5;  // p_schnorr only
  std::vector<QSigmaPrefix> prefix_members;
  std::vector<Projector> proj_members;
  std::vector<double> mass_bounds;
  std::vector<double> partial_sums;
  std::optional<double> declared_limit;
};

QuantumTest make_qmlt(std::vector<QSigmaPrefix> members, const Tolerances& tol = {});
QuantumTest make_qmlt_with_bounds(std::vector<QSigmaPrefix> members, std::vector<double> bounds,
                                  int first_index, const Tolerances& tol = {});
QuantumTest make_qsolovay(std::vector<QSigmaPrefix> members);
QuantumTest make_strong_solovay(std::vector<Projector> members);
QuantumTest make_qschnorr(std::vector<Projector> members, double declared_limit,
                          const Tolerances& tol = {});
QuantumTest make_p_schnorr(double p, std::vector<Projector> members, double declared_limit,
                           const Tolerances& tol = {});

int member_count(const QuantumTest& t);

// Mass of member k under the test's own functional (tau, or b_p for the
// p-Schnorr discipline).
double member_mass(const QuantumTest& t, int k);

// rho(S^k) for member k; single-projection members evaluate at their own
// level and require rho to be at least that deep.
double member_value(const StatePrefix& rho, const QuantumTest& t, int k);

void check_test(const QuantumTest& t, const Tolerances& tol = {});

// Failing a q-MLT at order delta: every member captures at least delta.
bool fails_qmlt(const StatePrefix& rho, const QuantumTest& t, double delta);

// Solovay-style failing, finitized: at least `count` members exceed delta.
bool fails_solovay(const StatePrefix& rho, const QuantumTest& t, double delta, int count = 3);

// The nesting construction: from a q-MLT (G^i)_i builds Q^m, m >= 2, where
// Q^m_n projects onto span of the union of ranges of G^i_n for m <= i <= n.
// Output member slot j carries label m = 2+j and mass bound 2^{-m+1}.
QuantumTest build_nested(const QuantumTest& qmlt, const Tolerances& tol = {});

}  // namespace qrl
