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

#include "qrl/types.hpp"

#include <numeric>

namespace qrl {

double& Tolerances::field(std::string_view name) {
  if (name == "tol_herm") return herm;
  if (name == "tol_psd") return psd;
  if (name == "tol_coh") return coh;
  if (name == "tol_trace") return trace;
  if (name == "tol_proj") return proj;
  if (name == "tol_nest") return nest;
  if (name == "tol_mass") return mass;
  if (name == "eps_max") return eps_max;
  throw std::invalid_argument("unknown tolerance: " + std::string(name));
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::uint64_t index_of_bits(std::string_view bits) {
  if (bits.size() > 63) throw std::invalid_argument("index_of_bits: string too long");
  std::uint64_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("index_of_bits: not a bitstring");
    idx = (idx << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return idx;
}

std::string bits_of_index(std::uint64_t index, int length) {
  if (length < 0 || length > 63) throw std::invalid_argument("bits_of_index: bad length");
  std::string s(static_cast<std::size_t>(length), '0');
  for (int i = length - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = (index & 1u) ? '1' : '0';
    index >>= 1;
  }
  if (index != 0) throw std::invalid_argument("bits_of_index: index does not fit length");
  return s;
}

int ones_count(std::string_view bits) {
  int ones = 0;
  for (char c : bits) ones += (c == '1');
  return ones;
}

bool is_bitstring(std::string_view s) {
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

double max_abs(const Eigen::Ref<const CMatrix>& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Eigen::Ref<const CMatrix>& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol;
}

}  // namespace qrl
