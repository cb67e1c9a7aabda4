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

#include "qrl/state.hpp"

#include <algorithm>
#include <cmath>

namespace qrl {

namespace {

void require_depth(int depth, int cap) {
  if (depth < 1) throw std::invalid_argument("StatePrefix: depth must be >= 1");
  if (depth > cap) throw std::invalid_argument("StatePrefix: depth exceeds cap");
}

double bernoulli_weight(double p, std::string_view sigma) {
  double w = 1.0;
  for (char c : sigma) w *= (c == '0') ? p : (1.0 - p);
  return w;
}

}  // namespace

StatePrefix make_tau(int depth) { return make_bernoulli(0.5, depth); }

StatePrefix make_classical(std::string_view bits, int depth) {
  require_depth(depth, kMaxDiagQubits);
  if (static_cast<int>(bits.size()) < depth)
    throw std::invalid_argument("make_classical: bitstring shorter than depth");
  if (!is_bitstring(bits)) throw std::invalid_argument("make_classical: not a bitstring");
  StatePrefix s;
  s.kind = StateKind::classical;
  s.depth = depth;
  s.bits = std::string(bits.substr(0, static_cast<std::size_t>(depth)));
  return s;
}

StatePrefix make_bernoulli(double p, int depth) {
  require_depth(depth, kMaxDiagQubits);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("make_bernoulli: p outside [0,1]");
  StatePrefix s;
  s.kind = StateKind::bernoulli;
  s.depth = depth;
  s.p = p;
  return s;
}

StatePrefix make_diagonal(int depth, std::map<std::string, double> top, const Tolerances& tol) {
  require_depth(depth, kMaxDiagQubits);
  StatePrefix s;
  s.kind = StateKind::diagonal;
  s.depth = depth;
  s.diag_levels.resize(static_cast<std::size_t>(depth));
  double sum = 0.0;
  for (const auto& [sigma, w] : top) {
    if (static_cast<int>(sigma.size()) != depth || !is_bitstring(sigma))
      throw std::invalid_argument("make_diagonal: key is not a depth-length bitstring");
    if (w < 0.0) throw std::invalid_argument("make_diagonal: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.trace)
    throw std::invalid_argument("make_diagonal: weights must sum to one");
  s.diag_levels.back() = DiagonalLevel{depth, std::move(top)};
  for (int k = depth - 1; k >= 1; --k) {
    DiagonalLevel& lower = s.diag_levels[static_cast<std::size_t>(k - 1)];
    lower.qubits = k;
    for (const auto& [sigma, w] : s.diag_levels[static_cast<std::size_t>(k)].weights)
      if (w != 0.0) lower.weights[sigma.substr(0, static_cast<std::size_t>(k))] += w;
  }
  return s;
}

StatePrefix dense_from_top(DensityMatrix top, const Tolerances& tol) {
  check_density(top, tol);
  const int depth = top.qubits;
  require_depth(depth, kMaxDenseQubits);
  StatePrefix s;
  s.kind = StateKind::dense;
  s.depth = depth;
  s.dense_levels.resize(static_cast<std::size_t>(depth));
  s.dense_levels.back() = std::move(top);
  for (int k = depth - 1; k >= 1; --k)
    s.dense_levels[static_cast<std::size_t>(k - 1)] =
        partial_trace_last(s.dense_levels[static_cast<std::size_t>(k)]);
  return s;
}

StatePrefix make_dense(std::vector<DensityMatrix> levels, const Tolerances& tol) {
  const int depth = static_cast<int>(levels.size());
  require_depth(depth, kMaxDenseQubits);
  for (int k = 1; k <= depth; ++k)
    if (levels[static_cast<std::size_t>(k - 1)].qubits != k)
      throw std::invalid_argument("make_dense: level k must act on k qubits");
  StatePrefix s;
  s.kind = StateKind::dense;
  s.depth = depth;
  s.dense_levels = std::move(levels);
  check_coherence(s, tol);
  check_density(s.dense_levels.back(), tol);
  return s;
}

StatePrefix mix_states(const std::vector<StatePrefix>& states, const std::vector<double>& weights,
                       const Tolerances& tol) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("mix_states: need equally many states and weights");
  const int depth = states.front().depth;
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mix_states: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.trace)
    throw std::invalid_argument("mix_states: weights must sum to one");
  bool all_diag = true;
  for (const StatePrefix& s : states) {
    if (s.depth != depth) throw std::invalid_argument("mix_states: depth mismatch");
    all_diag = all_diag && is_diagonal_kind(s);
  }

  StatePrefix out;
  out.depth = depth;
  if (all_diag) {
    out.kind = StateKind::diagonal;
    out.diag_levels.resize(static_cast<std::size_t>(depth));
    for (int k = 1; k <= depth; ++k) {
      DiagonalLevel& lvl = out.diag_levels[static_cast<std::size_t>(k - 1)];
      lvl.qubits = k;
      for (std::size_t i = 0; i < states.size(); ++i) {
        if (weights[i] == 0.0) continue;
        DiagonalLevel part = level_weights(states[i], k);
        for (const auto& [sigma, w] : part.weights) lvl.weights[sigma] += weights[i] * w;
      }
    }
  } else {
    out.kind = StateKind::dense;
    out.dense_levels.resize(static_cast<std::size_t>(depth));
    for (int k = 1; k <= depth; ++k) {
      CMatrix acc = CMatrix::Zero(qubit_dim(k), qubit_dim(k));
      for (std::size_t i = 0; i < states.size(); ++i)
        if (weights[i] != 0.0) acc += weights[i] * level_matrix(states[i], k).mat;
      out.dense_levels[static_cast<std::size_t>(k - 1)] = DensityMatrix{k, std::move(acc)};
    }
  }
  return out;
}

bool is_diagonal_kind(const StatePrefix& s) { return s.kind != StateKind::dense; }

double state_weight(const StatePrefix& s, std::string_view sigma) {
  const int k = static_cast<int>(sigma.size());
  if (k < 1 || k > s.depth) throw std::invalid_argument("state_weight: level out of range");
  switch (s.kind) {
    case StateKind::classical:
      return std::string_view(s.bits).substr(0, sigma.size()) == sigma ? 1.0 : 0.0;
    case StateKind::bernoulli:
      return bernoulli_weight(s.p, sigma);
    case StateKind::diagonal: {
      const auto& m = s.diag_levels[static_cast<std::size_t>(k - 1)].weights;
      auto it = m.find(std::string(sigma));
      return it == m.end() ? 0.0 : it->second;
    }
    case StateKind::dense: {
      const std::uint64_t idx = index_of_bits(sigma);
      return s.dense_levels[static_cast<std::size_t>(k - 1)].mat(static_cast<Eigen::Index>(idx),
                                                                 static_cast<Eigen::Index>(idx))
          .real();
    }
  }
  throw std::logic_error("state_weight: bad kind");
}

DensityMatrix level_matrix(const StatePrefix& s, int k) {
  if (k < 1 || k > s.depth) throw std::invalid_argument("level_matrix: level out of range");
  if (s.kind == StateKind::dense) return s.dense_levels[static_cast<std::size_t>(k - 1)];
  if (k > kMaxDenseQubits)
    throw std::invalid_argument("level_matrix: diagonal level too deep to densify");
  const std::int64_t dim = qubit_dim(k);
  CMatrix mat = CMatrix::Zero(dim, dim);
  if (s.kind == StateKind::diagonal) {
    for (const auto& [sigma, w] : s.diag_levels[static_cast<std::size_t>(k - 1)].weights)
      mat(static_cast<Eigen::Index>(index_of_bits(sigma)),
          static_cast<Eigen::Index>(index_of_bits(sigma))) = w;
  } else if (s.kind == StateKind::classical) {
    const std::uint64_t idx = index_of_bits(std::string_view(s.bits).substr(0, static_cast<std::size_t>(k)));
    mat(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = 1.0;
  } else {
    for (std::int64_t i = 0; i < dim; ++i)
      mat(i, i) = bernoulli_weight(s.p, bits_of_index(static_cast<std::uint64_t>(i), k));
  }
  return DensityMatrix{k, std::move(mat)};
}

DiagonalLevel level_weights(const StatePrefix& s, int k) {
  if (k < 1 || k > s.depth) throw std::invalid_argument("level_weights: level out of range");
  switch (s.kind) {
    case StateKind::dense:
      throw std::invalid_argument("level_weights: dense kind has no weight map");
    case StateKind::diagonal:
      return s.diag_levels[static_cast<std::size_t>(k - 1)];
    case StateKind::classical: {
      DiagonalLevel lvl{k, {}};
      lvl.weights[s.bits.substr(0, static_cast<std::size_t>(k))] = 1.0;
      return lvl;
    }
    case StateKind::bernoulli: {
      if (k > 20) throw std::invalid_argument("level_weights: Bernoulli level too large to materialize");
      DiagonalLevel lvl{k, {}};
      const std::int64_t dim = qubit_dim(k);
      for (std::int64_t i = 0; i < dim; ++i) {
        std::string sigma = bits_of_index(static_cast<std::uint64_t>(i), k);
        const double w = bernoulli_weight(s.p, sigma);
        if (w != 0.0) lvl.weights[std::move(sigma)] = w;
      }
      return lvl;
    }
  }
  throw std::logic_error("level_weights: bad kind");
}

void check_coherence(const StatePrefix& s, const Tolerances& tol) {
  if (s.depth < 1) throw std::invalid_argument("check_coherence: empty prefix");
  if (s.kind == StateKind::dense) {
    if (static_cast<int>(s.dense_levels.size()) != s.depth)
      throw std::invalid_argument("check_coherence: level count mismatch");
    for (int k = s.depth; k > 1; --k) {
      const DensityMatrix traced = partial_trace_last(s.dense_levels[static_cast<std::size_t>(k - 1)]);
      if (max_abs(traced.mat - s.dense_levels[static_cast<std::size_t>(k - 2)].mat) > tol.coh)
        throw std::invalid_argument("check_coherence: partial-trace link broken at level " +
                                    std::to_string(k));
    }
    return;
  }
  if (s.kind == StateKind::classical) {
    if (static_cast<int>(s.bits.size()) < s.depth || !is_bitstring(s.bits))
      throw std::invalid_argument("check_coherence: bad classical bits");
    return;
  }
  if (s.kind == StateKind::bernoulli) {
    if (!(s.p >= 0.0 && s.p <= 1.0)) throw std::invalid_argument("check_coherence: bad p");
    return;
  }
  if (static_cast<int>(s.diag_levels.size()) != s.depth)
    throw std::invalid_argument("check_coherence: level count mismatch");
  double top_sum = 0.0;
  for (const auto& [sigma, w] : s.diag_levels.back().weights) {
    if (w < 0.0) throw std::invalid_argument("check_coherence: negative weight on " + sigma);
    top_sum += w;
  }
  if (std::abs(top_sum - 1.0) > tol.trace)
    throw std::invalid_argument("check_coherence: deepest level does not sum to one");
  for (int k = s.depth; k > 1; --k) {
    std::map<std::string, double> marg;
    for (const auto& [sigma, w] : s.diag_levels[static_cast<std::size_t>(k - 1)].weights)
      marg[sigma.substr(0, static_cast<std::size_t>(k - 1))] += w;
    const auto& lower = s.diag_levels[static_cast<std::size_t>(k - 2)].weights;
    for (const auto& [sigma, w] : marg) {
      auto it = lower.find(sigma);
      const double lw = it == lower.end() ? 0.0 : it->second;
      if (std::abs(lw - w) > tol.coh)
        throw std::invalid_argument("check_coherence: weight marginalization broken at level " +
                                    std::to_string(k));
    }
    for (const auto& [sigma, w] : lower)
      if (marg.find(sigma) == marg.end() && std::abs(w) > tol.coh)
        throw std::invalid_argument("check_coherence: orphan weight at level " +
                                    std::to_string(k - 1));
  }
}

}  // namespace qrl
