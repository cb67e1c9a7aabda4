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

#include "qrl/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qrl {

DyadicMeasure measure_of(const StatePrefix& rho) {
  if (!is_diagonal_kind(rho))
    throw std::invalid_argument("measure_of: dense states have no canonical measure");
  DyadicMeasure mu;
  mu.depth = rho.depth;
  mu.by_len.resize(static_cast<std::size_t>(rho.depth) + 1);
  mu.by_len[0][""] = 1.0;
  for (int k = 1; k <= rho.depth; ++k)
    mu.by_len[static_cast<std::size_t>(k)] = level_weights(rho, k).weights;
  return mu;
}

double mass_of(const DyadicMeasure& mu, std::string_view sigma) {
  const auto len = sigma.size();
  if (static_cast<int>(len) > mu.depth) throw std::invalid_argument("mass_of: string too long");
  const auto& m = mu.by_len[len];
  auto it = m.find(std::string(sigma));
  return it == m.end() ? 0.0 : it->second;
}

void check_measure(const DyadicMeasure& mu, const Tolerances& tol) {
  if (mu.depth + 1 != static_cast<int>(mu.by_len.size()))
    throw std::invalid_argument("check_measure: level count mismatch");
  if (std::abs(mass_of(mu, "") - 1.0) > tol.trace)
    throw std::invalid_argument("check_measure: empty cylinder must have mass one");
  for (int len = 0; len < mu.depth; ++len) {
    for (const auto& [sigma, w] : mu.by_len[static_cast<std::size_t>(len)]) {
      const double children = mass_of(mu, sigma + "0") + mass_of(mu, sigma + "1");
      if (std::abs(children - w) > tol.trace)
        throw std::invalid_argument("check_measure: additivity fails under " + sigma);
    }
  }
}

std::string classical_discipline_name(ClassicalDiscipline d) {
  switch (d) {
    case ClassicalDiscipline::mlt: return "MLT";
    case ClassicalDiscipline::solovay: return "Solovay";
    case ClassicalDiscipline::schnorr: return "Schnorr";
  }
  throw std::logic_error("classical_discipline_name: bad value");
}

ClassicalDiscipline classical_discipline_from_name(std::string_view name) {
  if (name == "MLT") return ClassicalDiscipline::mlt;
  if (name == "Solovay") return ClassicalDiscipline::solovay;
  if (name == "Schnorr") return ClassicalDiscipline::schnorr;
  throw std::invalid_argument("unknown classical discipline: " + std::string(name));
}

namespace {

void check_level_set(int level, const std::vector<std::string>& set) {
  for (const std::string& s : set)
    if (static_cast<int>(s.size()) != level || !is_bitstring(s))
      throw std::invalid_argument("classical test: level set holds a wrong-length string");
  if (!std::is_sorted(set.begin(), set.end()))
    throw std::invalid_argument("classical test: level set is not sorted");
  if (std::adjacent_find(set.begin(), set.end()) != set.end())
    throw std::invalid_argument("classical test: duplicate string in level set");
}

}  // namespace

void check_classical(const ClassicalTestPrefix& t, const Tolerances& tol) {
  for (const auto& member : t.members) {
    for (std::size_t i = 0; i < member.size(); ++i) {
      check_level_set(static_cast<int>(i) + 1, member[i]);
      if (i + 1 < member.size()) {
        // Every string's children must be covered one level down.
        for (const std::string& s : member[i]) {
          if (!std::binary_search(member[i + 1].begin(), member[i + 1].end(), s + "0") ||
              !std::binary_search(member[i + 1].begin(), member[i + 1].end(), s + "1"))
            throw std::invalid_argument("classical test: cylinder monotonicity fails above " + s);
        }
      }
    }
  }
  if (t.masses.size() != t.members.size())
    throw std::invalid_argument("classical test: one mass per member required");
  for (std::size_t j = 0; j < t.members.size(); ++j) {
    const auto& member = t.members[j];
    const double mass =
        member.empty() ? 0.0 : lebesgue_mass(static_cast<int>(member.size()), member.back());
    if (std::abs(mass - t.masses[j]) > tol.mass)
      throw std::invalid_argument("classical test: stored mass disagrees with deepest level");
  }
  if (t.discipline == ClassicalDiscipline::mlt) {
    for (std::size_t j = 0; j < t.masses.size(); ++j) {
      const double bound =
          j < t.mass_bounds.size() ? t.mass_bounds[j] : pow2(-static_cast<int>(j) - 1);
      if (t.masses[j] > bound + tol.mass)
        throw std::invalid_argument("classical test: MLT member exceeds its mass bound");
    }
  } else {
    if (t.partial_sums.size() != t.members.size())
      throw std::invalid_argument("classical test: partial sums required");
    if (t.discipline == ClassicalDiscipline::schnorr && !t.declared_limit)
      throw std::invalid_argument("classical test: Schnorr requires a declared limit");
  }
}

double lebesgue_mass(int level, const std::vector<std::string>& set) {
  return pow2(-level) * static_cast<double>(set.size());
}

std::vector<std::string> threshold_basis_set(int qubits, const Projector& f, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("threshold_basis_set: delta must be positive");
  if (f.qubits != qubits) throw std::invalid_argument("threshold_basis_set: qubit mismatch");
  std::vector<std::string> out;
  if (is_diagonal(f)) {
    if (delta < 1.0) out = *f.strings;
  } else {
    const std::int64_t dim = qubit_dim(qubits);
    for (std::int64_t i = 0; i < dim; ++i)
      if (diag_entry(f, static_cast<std::uint64_t>(i)) > delta)
        out.push_back(bits_of_index(static_cast<std::uint64_t>(i), qubits));
  }
  std::sort(out.begin(), out.end());
  const double cap = static_cast<double>(rank_of(f)) / delta;
  if (!(static_cast<double>(out.size()) < cap + 1e-9))
    throw std::runtime_error("threshold_basis_set: counting bound violated");
  return out;
}

ClassicalTestPrefix qmlt_to_classical(const QuantumTest& qmlt, double delta) {
  if (qmlt.discipline != Discipline::qmlt)
    throw std::invalid_argument("qmlt_to_classical: input must be a qMLT");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("qmlt_to_classical: delta outside (0,1)");
  ClassicalTestPrefix out;
  out.discipline = ClassicalDiscipline::mlt;
  for (const QSigmaPrefix& g : qmlt.prefix_members) {
    std::vector<std::vector<std::string>> levels;
    std::vector<std::string> prev;
    for (int n = 1; n <= g.depth; ++n) {
      std::vector<std::string> set =
          threshold_basis_set(n, g.projs[static_cast<std::size_t>(n - 1)], delta / 4.0);
      // Nesting makes both children of a kept string pass the threshold one
      // level down; re-add them so the cylinder structure is exact even if a
      // diagonal entry sits on the threshold to within solver noise.
      for (const std::string& s : prev) {
        set.push_back(s + "0");
        set.push_back(s + "1");
      }
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      prev = set;
      levels.push_back(std::move(set));
    }
    out.masses.push_back(levels.empty() ? 0.0
                                        : lebesgue_mass(static_cast<int>(levels.size()), levels.back()));
    out.members.push_back(std::move(levels));
  }
  for (std::size_t j = 0; j < qmlt.prefix_members.size(); ++j) {
    const double in_bound =
        j < qmlt.mass_bounds.size() ? qmlt.mass_bounds[j] : pow2(-static_cast<int>(j) - 1);
    out.mass_bounds.push_back(4.0 / delta * in_bound);
  }
  return out;
}

ClassicalTestPrefix classical_solovay_to_mlt(const ClassicalTestPrefix& solovay, double delta,
                                             int m_max) {
  if (solovay.discipline != ClassicalDiscipline::solovay)
    throw std::invalid_argument("classical_solovay_to_mlt: input must be a Solovay test");
  if (m_max < 1) throw std::invalid_argument("classical_solovay_to_mlt: m_max must be >= 1");
  double mass_sum = 0.0;
  int depth = 0;
  for (std::size_t k = 0; k < solovay.members.size(); ++k) {
    const auto& member = solovay.members[k];
    depth = std::max(depth, static_cast<int>(member.size()));
    if (!member.empty())
      mass_sum += lebesgue_mass(static_cast<int>(member.size()), member.back());
    for (std::size_t i = 0; i < member.size() && i < k; ++i)
      if (!member[i].empty())
        throw std::invalid_argument(
            "classical_solovay_to_mlt: member must vanish below its own index");
  }
  if (mass_sum >= 1.0)
    throw std::invalid_argument("classical_solovay_to_mlt: total mass must stay below one");

  ClassicalTestPrefix out;
  out.discipline = ClassicalDiscipline::mlt;
  for (int m = 1; m <= m_max; ++m) {
    const double threshold = pow2(m - 1) * delta;
    std::vector<std::vector<std::string>> levels;
    for (int t = 1; t <= depth; ++t) {
      // Count, for every length-t string, how many members cover it at level t.
      std::map<std::string, int> hits;
      for (std::size_t k = 0; k < solovay.members.size(); ++k) {
        const auto& member = solovay.members[k];
        if (static_cast<int>(member.size()) < t) continue;
        for (const std::string& s : member[static_cast<std::size_t>(t - 1)]) ++hits[s];
      }
      std::vector<std::string> set;
      for (const auto& [s, c] : hits)
        if (static_cast<double>(c) > threshold) set.push_back(s);
      levels.push_back(std::move(set));
    }
    out.masses.push_back(levels.empty() ? 0.0
                                        : lebesgue_mass(static_cast<int>(levels.size()), levels.back()));
    out.mass_bounds.push_back(pow2(-m + 1) / delta);
    out.members.push_back(std::move(levels));
  }
  return out;
}

ClassicalTestPrefix schnorr_to_classical(const QuantumTest& qschnorr, double delta) {
  if (qschnorr.discipline != Discipline::qschnorr &&
      qschnorr.discipline != Discipline::strong_solovay)
    throw std::invalid_argument("schnorr_to_classical: input must hold single projections");
  if (delta <= 0.0) throw std::invalid_argument("schnorr_to_classical: delta must be positive");
  ClassicalTestPrefix out;
  out.discipline = ClassicalDiscipline::schnorr;
  double acc = 0.0;
  for (const Projector& q : qschnorr.proj_members) {
    std::vector<std::string> set = threshold_basis_set(q.qubits, q, delta);
    std::vector<std::vector<std::string>> levels(static_cast<std::size_t>(q.qubits));
    levels.back() = std::move(set);
    const double mass = lebesgue_mass(q.qubits, levels.back());
    acc += mass;
    out.masses.push_back(mass);
    out.partial_sums.push_back(acc);
    out.members.push_back(std::move(levels));
  }
  if (qschnorr.declared_limit) out.declared_limit = *qschnorr.declared_limit / delta;
  return out;
}

double member_measure(const StatePrefix& rho, const ClassicalTestPrefix& t, int j) {
  const auto& member = t.members.at(static_cast<std::size_t>(j));
  if (member.empty()) return 0.0;
  return member_measure_at(rho, t, j, static_cast<int>(member.size()));
}

double member_measure_at(const StatePrefix& rho, const ClassicalTestPrefix& t, int j, int level) {
  const auto& member = t.members.at(static_cast<std::size_t>(j));
  if (level < 1 || level > static_cast<int>(member.size()))
    throw std::invalid_argument("member_measure_at: level out of range");
  return state_set_mass(rho, level, member[static_cast<std::size_t>(level - 1)]);
}

}  // namespace qrl
