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

#include "qrl/sigma.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace qrl {

namespace {

// Range-inclusion check range(a) subset range(b) as ||(I-B B*) A||_max <= tol,
// written as ||b_dense * a_cols - a_cols|| for projector b.
bool range_included(const Projector& a, const Projector& b, double tol) {
  if (a.strings && b.strings)
    return std::includes(b.strings->begin(), b.strings->end(), a.strings->begin(),
                         a.strings->end());
  const CMatrix acols = basis_matrix(a);
  if (acols.cols() == 0) return true;
  const CMatrix bmat = dense_matrix(b);
  return max_abs(bmat * acols - acols) <= tol;
}

double bernoulli_mass(double p, const Projector& proj) {
  StatePrefix b = make_bernoulli(p, proj.qubits);
  return trace_with(b, proj.qubits, proj);
}

}  // namespace

void check_qsigma(const QSigmaPrefix& g, const Tolerances& tol) {
  if (g.depth < 1 || static_cast<int>(g.projs.size()) != g.depth)
    throw std::invalid_argument("check_qsigma: level count mismatch");
  for (int k = 1; k <= g.depth; ++k)
    if (g.projs[static_cast<std::size_t>(k - 1)].qubits != k)
      throw std::invalid_argument("check_qsigma: level k must act on k qubits");
  for (int k = 1; k < g.depth; ++k) {
    const Projector lifted = lift(g.projs[static_cast<std::size_t>(k - 1)]);
    if (!range_included(lifted, g.projs[static_cast<std::size_t>(k)], tol.nest))
      throw std::invalid_argument("check_qsigma: range nesting fails at level " +
                                  std::to_string(k + 1));
  }
}

double tau_value(const QSigmaPrefix& g) {
  if (g.depth < 1) throw std::invalid_argument("tau_value: empty prefix");
  return pow2(-g.depth) * rank_of(g.projs.back());
}

double rho_value(const StatePrefix& rho, const QSigmaPrefix& g) {
  if (g.depth < 1) throw std::invalid_argument("rho_value: empty prefix");
  const int kmax = std::min(rho.depth, g.depth);
  if (kmax < 1) throw std::invalid_argument("rho_value: no common level");
  double best = 0.0;
  for (int k = 1; k <= kmax; ++k)
    best = std::max(best, trace_with(rho, k, g.projs[static_cast<std::size_t>(k - 1)]));
  return best;
}

std::string discipline_name(Discipline d) {
  switch (d) {
    case Discipline::qmlt: return "qMLT";
    case Discipline::qsolovay: return "qSolovay";
    case Discipline::strong_solovay: return "strongSolovay";
    case Discipline::qschnorr: return "qSchnorr";
    case Discipline::p_schnorr: return "pSchnorr";
  }
  throw std::logic_error("discipline_name: bad value");
}

Discipline discipline_from_name(std::string_view name) {
  if (name == "qMLT") return Discipline::qmlt;
  if (name == "qSolovay") return Discipline::qsolovay;
  if (name == "strongSolovay") return Discipline::strong_solovay;
  if (name == "qSchnorr") return Discipline::qschnorr;
  if (name == "pSchnorr") return Discipline::p_schnorr;
  throw std::invalid_argument("unknown discipline: " + std::string(name));
}

QuantumTest make_qmlt(std::vector<QSigmaPrefix> members, const Tolerances& tol) {
  std::vector<double> bounds;
  bounds.reserve(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) bounds.push_back(pow2(-static_cast<int>(j) - 1));
  return make_qmlt_with_bounds(std::move(members), std::move(bounds), 1, tol);
}

QuantumTest make_qmlt_with_bounds(std::vector<QSigmaPrefix> members, std::vector<double> bounds,
                                  int first_index, const Tolerances& tol) {
  if (bounds.size() != members.size())
    throw std::invalid_argument("make_qmlt_with_bounds: one bound per member");
  QuantumTest t;
  t.discipline = Discipline::qmlt;
  t.first_index = first_index;
  t.prefix_members = std::move(members);
  t.mass_bounds = std::move(bounds);
  check_test(t, tol);
  return t;
}

QuantumTest make_qsolovay(std::vector<QSigmaPrefix> members) {
  QuantumTest t;
  t.discipline = Discipline::qsolovay;
  t.prefix_members = std::move(members);
  double acc = 0.0;
  for (const QSigmaPrefix& g : t.prefix_members) {
    acc += tau_value(g);
    t.partial_sums.push_back(acc);
  }
  return t;
}

QuantumTest make_strong_solovay(std::vector<Projector> members) {
  QuantumTest t;
  t.discipline = Discipline::strong_solovay;
  t.proj_members = std::move(members);
  double acc = 0.0;
  for (const Projector& q : t.proj_members) {
    acc += pow2(-q.qubits) * rank_of(q);
    t.partial_sums.push_back(acc);
  }
  return t;
}

QuantumTest make_qschnorr(std::vector<Projector> members, double declared_limit,
                          const Tolerances& tol) {
  QuantumTest t = make_strong_solovay(std::move(members));
  t.discipline = Discipline::qschnorr;
  t.declared_limit = declared_limit;
  check_test(t, tol);
  return t;
}

QuantumTest make_p_schnorr(double p, std::vector<Projector> members, double declared_limit,
                           const Tolerances& tol) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("make_p_schnorr: p outside [0,1]");
  QuantumTest t;
  t.discipline = Discipline::p_schnorr;
  t.p = p;
  t.proj_members = std::move(members);
  double acc = 0.0;
  for (const Projector& q : t.proj_members) {
    acc += bernoulli_mass(p, q);
    t.partial_sums.push_back(acc);
  }
  t.declared_limit = declared_limit;
  check_test(t, tol);
  return t;
}

int member_count(const QuantumTest& t) {
  if (t.discipline == Discipline::qmlt || t.discipline == Discipline::qsolovay)
    return static_cast<int>(t.prefix_members.size());
  return static_cast<int>(t.proj_members.size());
}

double member_mass(const QuantumTest& t, int k) {
  if (k < 0 || k >= member_count(t)) throw std::invalid_argument("member_mass: index out of range");
  if (t.discipline == Discipline::qmlt || t.discipline == Discipline::qsolovay)
    return tau_value(t.prefix_members[static_cast<std::size_t>(k)]);
  const Projector& q = t.proj_members[static_cast<std::size_t>(k)];
  if (t.discipline == Discipline::p_schnorr) return bernoulli_mass(t.p, q);
  return pow2(-q.qubits) * rank_of(q);
}

double member_value(const StatePrefix& rho, const QuantumTest& t, int k) {
  if (k < 0 || k >= member_count(t))
    throw std::invalid_argument("member_value: index out of range");
  if (t.discipline == Discipline::qmlt || t.discipline == Discipline::qsolovay)
    return rho_value(rho, t.prefix_members[static_cast<std::size_t>(k)]);
  const Projector& q = t.proj_members[static_cast<std::size_t>(k)];
  if (q.qubits > rho.depth)
    throw std::invalid_argument("member_value: state shallower than member projection");
  return trace_with(rho, q.qubits, q);
}

void check_test(const QuantumTest& t, const Tolerances& tol) {
  switch (t.discipline) {
    case Discipline::qmlt: {
      if (t.mass_bounds.size() != t.prefix_members.size())
        throw std::invalid_argument("check_test: qMLT needs one mass bound per member");
      for (std::size_t j = 0; j < t.prefix_members.size(); ++j) {
        check_qsigma(t.prefix_members[j], tol);
        if (tau_value(t.prefix_members[j]) > t.mass_bounds[j] + tol.mass)
          throw std::invalid_argument("check_test: member " + std::to_string(j) +
                                      " exceeds its mass bound");
      }
      return;
    }
    case Discipline::qsolovay: {
      for (const QSigmaPrefix& g : t.prefix_members) check_qsigma(g, tol);
      if (t.partial_sums.size() != t.prefix_members.size())
        throw std::invalid_argument("check_test: Solovay needs stored partial sums");
      return;
    }
    case Discipline::strong_solovay:
    case Discipline::qschnorr:
    case Discipline::p_schnorr: {
      if (t.partial_sums.size() != t.proj_members.size())
        throw std::invalid_argument("check_test: needs stored partial sums");
      for (std::size_t j = 1; j < t.partial_sums.size(); ++j)
        if (t.partial_sums[j] < t.partial_sums[j - 1] - tol.mass)
          throw std::invalid_argument("check_test: partial sums not monotone");
      if (t.discipline != Discipline::strong_solovay) {
        if (!t.declared_limit)
          throw std::invalid_argument("check_test: Schnorr test needs a declared limit");
        if (!t.partial_sums.empty() && t.partial_sums.back() > *t.declared_limit + tol.mass)
          throw std::invalid_argument("check_test: partial sums exceed declared limit");
      }
      return;
    }
  }
}

bool fails_qmlt(const StatePrefix& rho, const QuantumTest& t, double delta) {
  if (t.discipline != Discipline::qmlt)
    throw std::invalid_argument("fails_qmlt: wrong discipline");
  double inf = 1.0;
  for (int k = 0; k < member_count(t); ++k) inf = std::min(inf, member_value(rho, t, k));
  return inf >= delta;
}

bool fails_solovay(const StatePrefix& rho, const QuantumTest& t, double delta, int count) {
  if (t.discipline == Discipline::qmlt)
    throw std::invalid_argument("fails_solovay: wrong discipline");
  if (count < 1) throw std::invalid_argument("fails_solovay: count must be >= 1");
  int hits = 0;
  for (int k = 0; k < member_count(t); ++k) {
    // Skip single-projection members deeper than the state prefix.
    if (t.discipline != Discipline::qsolovay &&
        t.proj_members[static_cast<std::size_t>(k)].qubits > rho.depth)
      continue;
    if (member_value(rho, t, k) > delta) ++hits;
    if (hits >= count) return true;
  }
  return false;
}

QuantumTest build_nested(const QuantumTest& qmlt, const Tolerances& tol) {
  if (qmlt.discipline != Discipline::qmlt)
    throw std::invalid_argument("build_nested: input must be a qMLT");
  check_test(qmlt, tol);
  const int num_members = member_count(qmlt);
  if (num_members < 2) return make_qmlt_with_bounds({}, {}, 2, tol);
  const int depth = qmlt.prefix_members.front().depth;
  for (const QSigmaPrefix& g : qmlt.prefix_members)
    if (g.depth != depth) throw std::invalid_argument("build_nested: member depths differ");

  std::vector<QSigmaPrefix> out;
  std::vector<double> bounds;
  for (int m = 2; m <= num_members; ++m) {
    QSigmaPrefix q;
    q.depth = depth;
    for (int n = 1; n <= depth; ++n) {
      const std::int64_t dim = qubit_dim(n);
      CMatrix v = CMatrix::Zero(dim, dim);
      bool any = false;
      for (int i = m; i <= std::min(n, num_members); ++i) {
        const Projector& gin =
            qmlt.prefix_members[static_cast<std::size_t>(i - 1)].projs[static_cast<std::size_t>(n - 1)];
        if (rank_of(gin) == 0) continue;
        v += dense_matrix(gin);
        any = true;
      }
      if (!any) {
        q.projs.push_back(zero_projector(n));
        continue;
      }
      // Orthonormal basis of the union of ranges: eigenvectors of the sum of
      // the projections above a fixed cutoff.
      Eigen::SelfAdjointEigenSolver<CMatrix> es(v);
      std::vector<Eigen::Index> keep;
      for (Eigen::Index idx = 0; idx < dim; ++idx)
        if (es.eigenvalues()(idx) > 1e-9) keep.push_back(idx);
      CMatrix cols(dim, static_cast<Eigen::Index>(keep.size()));
      for (std::size_t j = 0; j < keep.size(); ++j)
        cols.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
      q.projs.push_back(projector_from_columns(n, std::move(cols), tol));
    }
    out.push_back(std::move(q));
    bounds.push_back(pow2(-m + 1));
  }
  return make_qmlt_with_bounds(std::move(out), std::move(bounds), 2, tol);
}

}  // namespace qrl
