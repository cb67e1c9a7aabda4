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

#include "qrl/generate.hpp"

#include <algorithm>
#include <set>

namespace qrl {

ApproxInstance random_approx_instance(Rng& rng, int max_qubits, int max_subspaces,
                                      const std::vector<double>& deltas, int max_m) {
  if (deltas.empty()) throw std::invalid_argument("random_approx_instance: no deltas");
  ApproxInstance inst;
  inst.qubits = rng.uniform_int(1, max_qubits);
  const std::int64_t dim = qubit_dim(inst.qubits);
  const int k = rng.uniform_int(1, max_subspaces);
  inst.m = std::min(rng.uniform_int(1, max_m), k);
  inst.delta = deltas[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(deltas.size()) - 1))];

  const CVector core = random_unit_vector(rng, dim);
  double total_rank = 0.0;
  for (int i = 0; i < k; ++i) {
    const int max_extra = static_cast<int>(std::min<std::int64_t>(dim - 1, 3));
    const int extra = rng.uniform_int(0, max_extra);
    CMatrix seed(dim, 1);
    seed.col(0) = core;
    inst.subspaces.push_back(
        projector_from_columns(inst.qubits, extend_orthonormal(rng, seed, extra)));
    total_rank += 1.0 + extra;
  }
  inst.d = total_rank;
  return inst;
}

std::optional<DensityMatrix> sample_q_member(Rng& rng, const ApproxInstance& inst,
                                             int max_attempts) {
  const std::int64_t dim = qubit_dim(inst.qubits);
  // The shared core of the instance's subspaces; any of them restores it.
  const CVector core = inst.subspaces.empty() ? random_unit_vector(rng, dim)
                                              : CVector(basis_matrix(inst.subspaces.front()).col(0));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const double spread = rng.uniform(0.0, 0.5 * (1.0 - inst.delta));
    CVector u = core;
    if (spread > 0.0) {
      CVector w = random_unit_vector(rng, dim);
      u = (std::sqrt(1.0 - spread) * core + std::sqrt(spread) * w);
      u /= u.norm();
    }
    const double beta = rng.uniform(0.0, 0.4 * (1.0 - inst.delta));
    CMatrix mat = (1.0 - beta) * (u * u.adjoint());
    if (beta > 0.0) mat += beta * random_density(rng, inst.qubits).mat;
    mat = (mat + mat.adjoint()) / 2.0;
    mat /= mat.trace().real();
    DensityMatrix rho{inst.qubits, std::move(mat)};
    int hits = 0;
    for (const Projector& sub : inst.subspaces)
      if (trace_with(rho, sub) > inst.delta) ++hits;
    if (hits >= inst.m) return rho;
  }
  return std::nullopt;
}

QuantumTest random_qmlt(Rng& rng, int depth, int num_members) {
  if (depth < 1 || depth > kMaxDenseQubits)
    throw std::invalid_argument("random_qmlt: bad depth");
  num_members = std::min(num_members, depth);
  std::vector<QSigmaPrefix> members;
  for (int m = 1; m <= num_members; ++m) {
    QSigmaPrefix g;
    g.depth = depth;
    const int start = rng.uniform_int(m, depth);
    CMatrix basis(1, 0);
    for (int n = 1; n <= depth; ++n) {
      const std::int64_t dim = qubit_dim(n);
      if (n < start) {
        g.projs.push_back(zero_projector(n));
        continue;
      }
      CMatrix lifted = n == start ? CMatrix(dim, 0) : tensor_with_identity(basis);
      const std::int64_t cap = n - m >= 0 ? pow2_i64(n - m) : 0;
      const std::int64_t budget = cap - lifted.cols();
      int extra = n == start ? 1 : 0;
      if (budget > extra && rng.uniform() < 0.5)
        extra += rng.uniform_int(0, static_cast<int>(std::min<std::int64_t>(budget - extra, 2)));
      basis = extend_orthonormal(rng, lifted, extra);
      g.projs.push_back(projector_from_columns(n, basis));
    }
    members.push_back(std::move(g));
  }
  return make_qmlt(std::move(members));
}

StatePrefix random_dense_state(Rng& rng, int depth, int rank) {
  return dense_from_top(random_density(rng, depth, rank));
}

namespace {

// Product branch chi_1, chi_2, ... with chi_{k+1} = chi_k (x) v_k; the lift
// of span{chi_k} always contains chi_{k+1}.
std::vector<CVector> random_product_branch(Rng& rng, int depth) {
  std::vector<CVector> branch;
  CVector chi = random_unit_vector(rng, 2);
  branch.push_back(chi);
  for (int k = 2; k <= depth; ++k) {
    const CVector v = random_unit_vector(rng, 2);
    CVector next(chi.size() * 2);
    for (Eigen::Index i = 0; i < chi.size(); ++i) {
      next(2 * i) = chi(i) * v(0);
      next(2 * i + 1) = chi(i) * v(1);
    }
    chi = std::move(next);
    branch.push_back(chi);
  }
  return branch;
}

}  // namespace

PlantedSolovay planted_solovay_instance(Rng& rng, int depth, int num_members,
                                        const Rational& delta) {
  // Member masses are bounded by 2^{3-depth} each; depth >= 5 keeps the total
  // below one for every admissible member count.
  if (depth < 5 || depth > kMaxDenseQubits)
    throw std::invalid_argument("planted_solovay_instance: bad depth");
  num_members = std::min(num_members, depth);
  const std::vector<CVector> branch = random_product_branch(rng, depth);

  PlantedSolovay planted;
  planted.instance.depth = depth;
  planted.instance.delta = delta;
  planted.plant_level = depth;
  for (int k = 1; k <= num_members; ++k) {
    // Member k switches on at a level >= k close to the top so that the total
    // mass stays far below one.
    const int start = std::max(k, depth - 2);
    QSigmaPrefix g;
    g.depth = depth;
    CMatrix basis(1, 0);
    for (int n = 1; n <= depth; ++n) {
      if (n < start) {
        g.projs.push_back(zero_projector(n));
        continue;
      }
      if (n == start) {
        CMatrix seed(qubit_dim(n), 1);
        seed.col(0) = branch[static_cast<std::size_t>(n - 1)];
        basis = extend_orthonormal(rng, seed, rng.uniform_int(0, 1));
      } else {
        basis = tensor_with_identity(basis);
      }
      g.projs.push_back(projector_from_columns(n, basis));
    }
    planted.instance.members.push_back(std::move(g));
  }
  check_solovay_instance(planted.instance);

  const double alpha = std::min(0.95, delta.value() + 0.3);
  const CVector& top = branch.back();
  CMatrix mat = alpha * (top * top.adjoint()) + (1.0 - alpha) * random_density(rng, depth).mat;
  mat = (mat + mat.adjoint()) / 2.0;
  mat /= mat.trace().real();
  planted.rho = dense_from_top(DensityMatrix{depth, std::move(mat)});
  return planted;
}

namespace {

std::vector<std::string> closure_step(const std::vector<std::string>& level) {
  std::vector<std::string> next;
  next.reserve(level.size() * 2);
  for (const std::string& s : level) {
    next.push_back(s + "0");
    next.push_back(s + "1");
  }
  return next;
}

}  // namespace

PlantedDiagonalQmlt planted_diagonal_qmlt(Rng& rng, int depth, int num_members, double delta) {
  if (depth < 2 || depth > kMaxDiagQubits)
    throw std::invalid_argument("planted_diagonal_qmlt: bad depth");
  num_members = std::min(num_members, depth);
  PlantedDiagonalQmlt planted;
  planted.delta = delta;
  std::string x;
  for (int i = 0; i < depth; ++i) x.push_back(rng.uniform() < 0.5 ? '0' : '1');
  planted.branch = x;

  const bool dense_members = depth <= 6;
  std::vector<QSigmaPrefix> members;
  for (int m = 1; m <= num_members; ++m) {
    QSigmaPrefix g;
    g.depth = depth;
    if (dense_members) {
      CMatrix basis(1, 0);
      for (int n = 1; n <= depth; ++n) {
        const std::int64_t dim = qubit_dim(n);
        if (n < m) {
          g.projs.push_back(zero_projector(n));
          continue;
        }
        CMatrix lifted;
        if (n == m) {
          lifted = CMatrix(dim, 1);
          lifted.setZero();
          lifted(static_cast<Eigen::Index>(index_of_bits(
                     std::string_view(x).substr(0, static_cast<std::size_t>(n)))),
                 0) = 1.0;
        } else {
          lifted = tensor_with_identity(basis);
        }
        const std::int64_t cap = pow2_i64(n - m);
        int extra = 0;
        if (lifted.cols() < cap && rng.uniform() < 0.4) extra = 1;
        basis = extend_orthonormal(rng, lifted, extra);
        g.projs.push_back(projector_from_columns(n, basis));
      }
    } else {
      std::vector<std::string> level_set;
      for (int n = 1; n <= depth; ++n) {
        if (n < m) {
          g.projs.push_back(zero_projector(n));
          continue;
        }
        if (n == m) {
          level_set = {x.substr(0, static_cast<std::size_t>(n))};
        } else {
          level_set = closure_step(level_set);
          const std::int64_t cap = pow2_i64(n - m);
          if (static_cast<std::int64_t>(level_set.size()) < cap && rng.uniform() < 0.3) {
            const std::string extra =
                bits_of_index(rng.next_u64() % static_cast<std::uint64_t>(qubit_dim(n)), n);
            level_set.push_back(extra);
            std::sort(level_set.begin(), level_set.end());
            level_set.erase(std::unique(level_set.begin(), level_set.end()), level_set.end());
          }
        }
        g.projs.push_back(projector_from_strings(n, level_set));
      }
    }
    members.push_back(std::move(g));
  }
  planted.qmlt = make_qmlt(std::move(members));

  const double alpha = std::min(0.95, delta + 0.25);
  std::map<std::string, double> top;
  top[x] = alpha;
  const int noise_support = std::min(12, static_cast<int>(qubit_dim(std::min(depth, 10))) - 1);
  std::map<std::string, double> noise = random_weight_map(rng, depth, std::max(1, noise_support));
  for (const auto& [sigma, w] : noise) top[sigma] += (1.0 - alpha) * w;
  planted.rho = make_diagonal(depth, std::move(top));
  return planted;
}

PlantedClassicalSolovay planted_classical_solovay(Rng& rng, int depth, int num_members,
                                                  double delta) {
  if (depth < 4 || depth > kMaxDiagQubits)
    throw std::invalid_argument("planted_classical_solovay: bad depth");
  num_members = std::min(num_members, depth);
  PlantedClassicalSolovay planted;
  planted.delta = delta;
  std::string x;
  for (int i = 0; i < depth; ++i) x.push_back(rng.uniform() < 0.5 ? '0' : '1');
  planted.branch = x;

  int base = 1;
  while (pow2_i64(base) < 2 * num_members) ++base;  // keeps the total mass below one
  planted.test.discipline = ClassicalDiscipline::solovay;
  double acc = 0.0;
  for (int k = 1; k <= num_members; ++k) {
    const int start = std::min(std::max(k, base), depth);
    std::vector<std::vector<std::string>> levels(static_cast<std::size_t>(depth));
    std::vector<std::string> level_set = {x.substr(0, static_cast<std::size_t>(start))};
    if (rng.uniform() < 0.5) {
      level_set.push_back(bits_of_index(
          rng.next_u64() % static_cast<std::uint64_t>(qubit_dim(start)), start));
      std::sort(level_set.begin(), level_set.end());
      level_set.erase(std::unique(level_set.begin(), level_set.end()), level_set.end());
    }
    levels[static_cast<std::size_t>(start - 1)] = level_set;
    for (int n = start + 1; n <= depth; ++n) {
      level_set = closure_step(level_set);
      levels[static_cast<std::size_t>(n - 1)] = level_set;
    }
    const double mass = lebesgue_mass(depth, levels.back());
    acc += mass;
    planted.test.masses.push_back(mass);
    planted.test.partial_sums.push_back(acc);
    planted.test.members.push_back(std::move(levels));
  }
  if (acc >= 1.0) throw std::logic_error("planted_classical_solovay: mass budget exceeded");

  const double alpha = std::min(0.95, delta + 0.25);
  std::map<std::string, double> top;
  top[x] = alpha;
  std::map<std::string, double> noise = random_weight_map(rng, depth, 12);
  for (const auto& [sigma, w] : noise) top[sigma] += (1.0 - alpha) * w;
  planted.rho = make_diagonal(depth, std::move(top));
  return planted;
}

}  // namespace qrl
