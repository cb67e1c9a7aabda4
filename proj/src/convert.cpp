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

#include "qrl/convert.hpp"

#include <cmath>

namespace qrl {

void check_solovay_instance(const SolovayInstance& inst, const Tolerances& tol) {
  if (inst.depth < 1) throw std::invalid_argument("check_solovay_instance: empty instance");
  if (!(inst.delta.num > 0 && inst.delta.num < inst.delta.den))
    throw std::invalid_argument("check_solovay_instance: delta must be a rational in (0,1)");
  for (std::size_t k = 0; k < inst.members.size(); ++k) {
    const QSigmaPrefix& g = inst.members[k];
    if (g.depth != inst.depth)
      throw std::invalid_argument("check_solovay_instance: member depth mismatch");
    check_qsigma(g, tol);
    for (int n = 1; n < static_cast<int>(k) + 1 && n <= inst.depth; ++n)
      if (rank_of(g.projs[static_cast<std::size_t>(n - 1)]) != 0)
        throw std::invalid_argument(
            "check_solovay_instance: member " + std::to_string(k + 1) +
            " must vanish below its own index");
  }
  if (total_mass(inst) >= 1.0)
    throw std::invalid_argument("check_solovay_instance: total tau mass must stay below one");
}

double total_mass(const SolovayInstance& inst) {
  double acc = 0.0;
  for (const QSigmaPrefix& g : inst.members) acc += tau_value(g);
  return acc;
}

namespace {

CMatrix level_sum(const SolovayInstance& inst, int n) {
  const std::int64_t dim = qubit_dim(n);
  CMatrix v = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < inst.members.size(); ++k) {
    if (static_cast<int>(k) + 1 > n) break;  // zero-padded below the member index
    const Projector& p = inst.members[k].projs[static_cast<std::size_t>(n - 1)];
    if (rank_of(p) > 0) v += dense_matrix(p);
  }
  return v;
}

}  // namespace

ConvertResult solovay_to_mlt(const SolovayInstance& inst, int m_max, const Tolerances& tol) {
  check_solovay_instance(inst, tol);
  if (m_max < 1) throw std::invalid_argument("solovay_to_mlt: m_max must be >= 1");

  // Level operators V_n = sum_{k<=n} S^k_n are shared across all m.
  std::vector<CMatrix> v_levels;
  v_levels.reserve(static_cast<std::size_t>(inst.depth));
  for (int n = 1; n <= inst.depth; ++n) v_levels.push_back(level_sum(inst, n));

  ConvertResult result;
  std::vector<QSigmaPrefix> members;
  std::vector<double> bounds;
  const long double delta_ld =
      static_cast<long double>(inst.delta.num) / static_cast<long double>(inst.delta.den);
  for (int m = 1; m <= m_max; ++m) {
    // Threshold 2^m delta / 4 from the exact fraction.
    const double lambda = static_cast<double>(
        std::ldexp(static_cast<long double>(inst.delta.num), m) /
        (4.0L * static_cast<long double>(inst.delta.den)));
    QSigmaPrefix g;
    g.depth = inst.depth;
    CMatrix prev_basis(1, 0);  // C^m_0 is empty
    for (int n = 1; n <= inst.depth; ++n) {
      const CMatrix& v = v_levels[static_cast<std::size_t>(n - 1)];
      CMatrix seeds = tensor_with_identity(prev_basis);
      ConvertTraceRow row;
      row.m = m;
      row.n = n;
      row.min_seed_margin = 0.0;
      row.min_lift_drop = 0.0;
      if (seeds.cols() > 0) {
        const CMatrix& v_prev = v_levels[static_cast<std::size_t>(n - 2)];
        double min_margin = 1e300;
        double min_drop = 1e300;
        for (Eigen::Index j = 0; j < seeds.cols(); ++j) {
          const double q = (seeds.col(j).adjoint() * v * seeds.col(j))(0).real();
          const double q_parent =
              (prev_basis.col(j / 2).adjoint() * v_prev * prev_basis.col(j / 2))(0).real();
          min_margin = std::min(min_margin, q - lambda);
          min_drop = std::min(min_drop, q - q_parent);
        }
        row.min_seed_margin = min_margin;
        row.min_lift_drop = min_drop;
        if (min_margin < 0.0) {
          row.seed_breach = true;
          result.warnings.push_back("m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                    ": lifted seed fell below the threshold by " +
                                    std::to_string(-min_margin));
          if (min_margin < -1e-6)
            throw std::runtime_error("solovay_to_mlt: lifted seed violates membership well beyond "
                                     "tolerance");
        }
      }
      GreedyResult greedy = greedy_maximal_set(v, lambda, seeds, tol);
      row.basis_size = static_cast<int>(greedy.basis.cols());
      row.accepted = row.basis_size - static_cast<int>(seeds.cols());
      row.tau_partial = pow2(-n) * row.basis_size;
      result.trace.push_back(row);
      prev_basis = greedy.basis;
      g.projs.push_back(std::move(greedy.projector));
    }
    members.push_back(std::move(g));
    bounds.push_back(static_cast<double>(4.0L / delta_ld) * pow2(-m));
  }
  result.test = make_qmlt_with_bounds(std::move(members), std::move(bounds), 1, tol);
  return result;
}

TransferReport verify_failure_transfer(const StatePrefix& rho, const SolovayInstance& inst,
                                       const QuantumTest& mlt, int m) {
  if (m < 1 || m > member_count(mlt))
    throw std::invalid_argument("verify_failure_transfer: member index out of range");
  const double delta = inst.delta.value();
  TransferReport report;
  report.floor = delta / 4.0;
  const int depth = std::min(rho.depth, inst.depth);
  const std::int64_t needed = pow2_i64(m);
  for (int n = 1; n <= depth; ++n) {
    int failing = 0;
    for (std::size_t k = 0; k < inst.members.size() && static_cast<int>(k) < n; ++k) {
      const Projector& p = inst.members[k].projs[static_cast<std::size_t>(n - 1)];
      if (rank_of(p) == 0) continue;
      if (trace_with(rho, n, p) > delta) ++failing;
    }
    if (failing >= needed) {
      report.hypothesis_met = true;
      report.witness_level = n;
      report.failing_members = failing;
      report.g_value =
          trace_with(rho, n, mlt.prefix_members[static_cast<std::size_t>(m - 1)]
                                 .projs[static_cast<std::size_t>(n - 1)]);
      report.margin = report.g_value - report.floor;
      return report;
    }
  }
  return report;
}

}  // namespace qrl
