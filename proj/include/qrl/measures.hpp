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

#include "qrl/sigma.hpp"

namespace qrl {

// Measure on dyadic cylinders up to a fixed depth: mass(sigma) for every
// bitstring of length <= depth, with mass("") = 1.
struct DyadicMeasure {
  int depth = 0;
  std::vector<std::map<std::string, double>> by_len;  // index = string length
};

// Materializes the measure of a diagonal-kind state; rejects dense kinds.
DyadicMeasure measure_of(const StatePrefix& rho);

double mass_of(const DyadicMeasure& mu, std::string_view sigma);

void check_measure(const DyadicMeasure& mu, const Tolerances& tol = {});

enum class ClassicalDiscipline { mlt, solovay, schnorr };

std::string classical_discipline_name(ClassicalDiscipline d);
ClassicalDiscipline classical_discipline_from_name(std::string_view name);

// Classical test prefix: per member, level sets A_i of length-i strings with
// [[A_i]] included in [[A_{i+1}]] (equivalently: both children of every
// member string appear one level down). Sets are sorted string lists and all
// membership logic is combinatorial.
struct ClassicalTestPrefix {
  ClassicalDiscipline discipline = ClassicalDiscipline::mlt;
  // members[j][i] = strings of length i+1; a member's vector may be shorter
  // than the ambient depth (single-projection Schnorr members stop at their
  // native level).
  std::vector<std::vector<std::vector<std::string>>> members;
  std::vector<double> masses;        // final Lebesgue mass per member
  std::vector<double> mass_bounds;   // MLT certificate; empty means 2^{-m}
  std::vector<double> partial_sums;  // solovay / schnorr
  std::optional<double> declared_limit;
};

void check_classical(const ClassicalTestPrefix& t, const Tolerances& tol = {});

// Lebesgue mass 2^{-n} |set| of a one-level set.
double lebesgue_mass(int level, const std::vector<std::string>& set);

// { sigma in 2^n : <sigma|F|sigma> > delta }, with the counting guarantee
// |result| < Tr(F)/delta checked on the way out.
std::vector<std::string> threshold_basis_set(int qubits, const Projector& f, double delta);

// Classical trace of a q-MLT: member m, level n keeps the basis strings with
// <sigma|G^m_n|sigma> > delta/4.
ClassicalTestPrefix qmlt_to_classical(const QuantumTest& qmlt, double delta);

// Classical Solovay-to-MLT conversion: member m, level t keeps the strings
// covered by more than 2^{m-1} delta of the input members.
ClassicalTestPrefix classical_solovay_to_mlt(const ClassicalTestPrefix& solovay, double delta,
                                             int m_max);

// Quantum Schnorr test to a classical (interval-style) Schnorr test via the
// threshold sets of its single projections.
ClassicalTestPrefix schnorr_to_classical(const QuantumTest& qschnorr, double delta);

// mu_rho of member j's deepest available level set.
double member_measure(const StatePrefix& rho, const ClassicalTestPrefix& t, int j);

// mu_rho of member j's level-n set.
double member_measure_at(const StatePrefix& rho, const ClassicalTestPrefix& t, int j, int level);

}  // namespace qrl
