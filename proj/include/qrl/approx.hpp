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

// Instance of the subspace-approximation problem: subspaces M_k with total
// dimension d, closeness order delta, multiplicity m.
struct ApproxInstance {
  int qubits = 0;
  std::vector<Projector> subspaces;
  double d = 0.0;
  double delta = 0.0;
  int m = 1;
};

void check_approx_instance(const ApproxInstance& inst, const Tolerances& tol = {});

struct EigenLogEntry {
  int iteration = 0;
  double theta = 0.0;
  bool accepted = false;
};

// Result of the greedy maximal-set extraction: orthonormal basis, the
// projection onto its span, and the per-iteration eigenvalue log.
struct GreedyResult {
  CMatrix basis;  // dim x k orthonormal columns
  Projector projector;
  double trace = 0.0;  // = k
  std::vector<EigenLogEntry> eigen_log;
};

// Extends `seed_vectors` to a maximal orthonormal set of vectors u with
// <u|V|u> > lambda, by repeatedly taking the top eigenpair of the deflated
// operator P V P (P = projection onto the current span's complement) and
// stopping once it drops to lambda + eps_max or below.
GreedyResult greedy_maximal_set(const CMatrix& v, double lambda, const CMatrix& seed_vectors,
                                const Tolerances& tol = {});

// Runs the greedy extraction on V = sum_k M_k with lambda = m delta / 4.
// The returned projection M satisfies Tr(M) < 4d/(delta m), and
// Tr(M rho) > delta/4 for every density matrix rho with Tr(rho M_k) > delta
// for at least m indices k (verified by callers and the test suites).
GreedyResult approximate_density_class(const ApproxInstance& inst, const Tolerances& tol = {});

struct LemmaReviewReport {
  bool preconditions_ok = false;
  std::string precondition_error;
  double trace_m = 0.0;
  double trace_bound = 0.0;    // 4 Tr(V) / (m delta)
  double trace_margin = 0.0;   // trace_bound - trace_m
  double overlap = 0.0;        // Tr(M rho)
  double overlap_floor = 0.0;  // delta / 4
  double overlap_margin = 0.0;
  bool bounds_hold = false;
};

// Checks both halves of the two-sided guarantee for a W <= V certificate:
// Tr(M) < 4 Tr(V)/(m delta), and Tr(M rho) > delta/4 whenever ||W|| <= m and
// Tr(W rho) > m delta.
LemmaReviewReport lemma_review_check(const CMatrix& v, double m, double delta, const CMatrix& w,
                                     const DensityMatrix& rho, const GreedyResult& result,
                                     const Tolerances& tol = {});

}  // namespace qrl
