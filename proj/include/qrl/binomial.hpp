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

#include <vector>

#include "qrl/types.hpp"

namespace qrl {

// Minimal unsigned big integer, just enough for exact binomial tail sums:
// N = sum_j C(n,j) num^{n-j} (den-num)^j with n <= 64 and small denominators.
struct BigNat {
  std::vector<std::uint32_t> limbs;  // little-endian base 2^32, no trailing zeros

  BigNat() = default;
  explicit BigNat(std::uint64_t v);

  bool is_zero() const { return limbs.empty(); }
  void add(const BigNat& other);
  void mul_small(std::uint64_t factor);
  long double to_long_double() const;
};

BigNat big_pow(std::uint64_t base, int exp);

// C(n, k), exact for n <= 64.
std::uint64_t binom64(int n, int k);

// P[X >= t] for X ~ Binomial(n, p_success). The rational overload keeps the
// numerator as an exact big integer for n <= 64 and switches to a log-space
// evaluation beyond; the double overload accumulates in long double.
long double binomial_upper_tail(int n, int t, const Rational& p_success);
long double binomial_upper_tail(int n, int t, double p_success);

}  // namespace qrl
