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

#include "qrl/approx.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qrl {

namespace {

// Makes the largest-modulus component real positive; first index wins ties.
CVector canonical_phase(CVector v) {
  Eigen::Index best = 0;
  double best_mod = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mod) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod > 0.0) v *= std::conj(v(best)) / std::abs(v(best));
  return v;
}

// Lexicographic order on (re, im) pairs rounded at 1e-12; used only to break
// ties between degenerate top eigenvectors.
bool lex_less(const CVector& a, const CVector& b) {
  auto grid = [](double x) { return std::llround(x * 1e12); };
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto ar = grid(a(i).real()), br = grid(b(i).real());
    if (ar != br) return ar < br;
    const auto ai = grid(a(i).imag()), bi = grid(b(i).imag());
    if (ai != bi) return ai < bi;
  }
  return false;
}

std::pair<double, CVector> top_eigenpair(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::Index dim = h.rows();
  const double theta = es.eigenvalues()(dim - 1);
  CVector best = canonical_phase(es.eigenvectors().col(dim - 1));
  for (Eigen::Index i = dim - 2; i >= 0 && es.eigenvalues()(i) >= theta - 1e-12; --i) {
    CVector cand = canonical_phase(es.eigenvectors().col(i));
    if (lex_less(cand, best)) best = std::move(cand);
  }
  return {theta, std::move(best)};
}

}  // namespace

void check_approx_instance(const ApproxInstance& inst, const Tolerances& tol) {
  if (!(inst.delta > 0.0 && inst.delta < 1.0))
    throw std::invalid_argument("check_approx_instance: delta outside (0,1)");
  if (inst.m < 1) throw std::invalid_argument("check_approx_instance: m must be >= 1");
  double total = 0.0;
  for (const Projector& p : inst.subspaces) {
    if (p.qubits != inst.qubits)
      throw std::invalid_argument("check_approx_instance: subspace dimension mismatch");
    total += rank_of(p);
  }
  if (total > inst.d + tol.trace)
    throw std::invalid_argument("check_approx_instance: subspace dimensions exceed d");
}

GreedyResult greedy_maximal_set(const CMatrix& v, double lambda, const CMatrix& seed_vectors,
                                const Tolerances& tol) {
  const Eigen::Index dim = v.rows();
  if (v.cols() != dim) throw std::invalid_argument("greedy_maximal_set: V must be square");
  if (!is_hermitian(v, tol.herm * std::max(1.0, max_abs(v))))
    throw std::invalid_argument("greedy_maximal_set: V is not Hermitian");
  if (seed_vectors.cols() > 0) {
    if (seed_vectors.rows() != dim)
      throw std::invalid_argument("greedy_maximal_set: seed dimension mismatch");
    const CMatrix gram = seed_vectors.adjoint() * seed_vectors;
    if (max_abs(gram - CMatrix::Identity(seed_vectors.cols(), seed_vectors.cols())) > 1e-8)
      throw std::invalid_argument("greedy_maximal_set: seeds are not orthonormal");
    for (Eigen::Index j = 0; j < seed_vectors.cols(); ++j) {
      const double q = (seed_vectors.col(j).adjoint() * v * seed_vectors.col(j))(0).real();
      if (q <= lambda - 1e-9)
        throw std::invalid_argument("greedy_maximal_set: seed below the lambda threshold");
    }
  }

  GreedyResult result;
  result.basis = seed_vectors;
  const CMatrix vherm = (v + v.adjoint()) / 2.0;
  int iteration = 0;
  while (true) {
    CMatrix deflator = CMatrix::Identity(dim, dim);
    if (result.basis.cols() > 0) deflator -= result.basis * result.basis.adjoint();
    const CMatrix reduced = deflator * vherm * deflator;
    auto [theta, w] = top_eigenpair((reduced + reduced.adjoint()) / 2.0);
    const bool accept = theta > lambda + tol.eps_max;
    result.eigen_log.push_back({iteration, theta, accept});
    if (!accept) break;
    // Re-orthogonalize against the current span before appending; the
    // eigenvector of the deflated operator is orthogonal up to solver noise.
    CVector u = w;
    if (result.basis.cols() > 0) u -= result.basis * (result.basis.adjoint() * u);
    const double norm = u.norm();
    if (norm < 1e-8)
      throw std::runtime_error("greedy_maximal_set: degenerate direction during extension");
    u /= norm;
    result.basis.conservativeResize(dim, result.basis.cols() + 1);
    result.basis.col(result.basis.cols() - 1) = canonical_phase(std::move(u));
    ++iteration;
  }
  const int qubits = [&dim] {
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) ++q;
    if ((Eigen::Index{1} << q) != dim)
      throw std::invalid_argument("greedy_maximal_set: dimension is not a power of two");
    return q;
  }();
  result.projector = projector_from_columns(qubits, result.basis, tol);
  result.trace = static_cast<double>(result.basis.cols());
  return result;
}

GreedyResult approximate_density_class(const ApproxInstance& inst, const Tolerances& tol) {
  check_approx_instance(inst, tol);
  const std::int64_t dim = qubit_dim(inst.qubits);
  CMatrix v = CMatrix::Zero(dim, dim);
  for (const Projector& p : inst.subspaces) v += dense_matrix(p);
  const double lambda = inst.m * inst.delta / 4.0;
  return greedy_maximal_set(v, lambda, CMatrix(dim, 0), tol);
}

LemmaReviewReport lemma_review_check(const CMatrix& v, double m, double delta, const CMatrix& w,
                                     const DensityMatrix& rho, const GreedyResult& result,
                                     const Tolerances& tol) {
  LemmaReviewReport report;
  auto fail = [&report](std::string msg) {
    report.preconditions_ok = false;
    report.precondition_error = std::move(msg);
    return report;
  };
  if (!is_hermitian(w, tol.herm * std::max(1.0, max_abs(w)))) return fail("W is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> diff(((v - w) + (v - w).adjoint()) / 2.0,
                                              Eigen::EigenvaluesOnly);
  if (diff.eigenvalues().minCoeff() < -tol.psd * std::max(1.0, max_abs(v)))
    return fail("V - W is not positive semidefinite");
  Eigen::SelfAdjointEigenSolver<CMatrix> wnorm((w + w.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  if (wnorm.eigenvalues().minCoeff() < -tol.psd * std::max(1.0, max_abs(w)))
    return fail("W is not positive semidefinite");
  const double w_op = wnorm.eigenvalues().maxCoeff();
  if (w_op > m + 1e-9) return fail("||W|| exceeds m");
  const double w_rho = (w * rho.mat).trace().real();
  if (!(w_rho > m * delta)) return fail("Tr(W rho) does not exceed m delta");

  report.preconditions_ok = true;
  report.trace_m = result.trace;
  report.trace_bound = 4.0 * v.trace().real() / (m * delta);
  report.trace_margin = report.trace_bound - report.trace_m;
  report.overlap = trace_with(rho, result.projector);
  report.overlap_floor = delta / 4.0;
  report.overlap_margin = report.overlap - report.overlap_floor;
  report.bounds_hold =
      report.trace_m < report.trace_bound + tol.mass && report.overlap > report.overlap_floor - tol.mass;
  return report;
}

}  // namespace qrl
