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

#include "qrl/binomial.hpp"

#include <cmath>

namespace qrl {

BigNat::BigNat(std::uint64_t v) {
  while (v != 0) {
    limbs.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    v >>= 32;
  }
}

void BigNat::add(const BigNat& other) {
  const std::size_t n = std::max(limbs.size(), other.limbs.size());
  limbs.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry + limbs[i];
    if (i < other.limbs.size()) s += other.limbs[i];
    limbs[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  if (carry) limbs.push_back(static_cast<std::uint32_t>(carry));
}

void BigNat::mul_small(std::uint64_t factor) {
  if (factor == 0 || is_zero()) {
    limbs.clear();
    return;
  }
  const std::uint64_t lo = factor & 0xffffffffu;
  const std::uint64_t hi = factor >> 32;
  std::vector<std::uint32_t> out(limbs.size() + 2, 0);
  auto add_at = [&out](std::size_t pos, std::uint64_t v) {
    while (v != 0) {
      if (pos >= out.size()) out.push_back(0);
      const std::uint64_t s = static_cast<std::uint64_t>(out[pos]) + (v & 0xffffffffu);
      out[pos] = static_cast<std::uint32_t>(s & 0xffffffffu);
      v = (v >> 32) + (s >> 32);
      ++pos;
    }
  };
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    add_at(i, static_cast<std::uint64_t>(limbs[i]) * lo);
    if (hi) add_at(i + 1, static_cast<std::uint64_t>(limbs[i]) * hi);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  limbs = std::move(out);
}

long double BigNat::to_long_double() const {
  long double acc = 0.0L;
  for (std::size_t i = limbs.size(); i-- > 0;) acc = acc * 4294967296.0L + limbs[i];
  return acc;
}

BigNat big_pow(std::uint64_t base, int exp) {
  BigNat r(1);
  for (int i = 0; i < exp; ++i) r.mul_small(base);
  return r;
}

std::uint64_t binom64(int n, int k) {
  if (n < 0 || n > 64 || k < 0 || k > n) throw std::invalid_argument("binom64: out of range");
  if (k > n - k) k = n - k;
  // Multiplicative form; intermediate values stay exact because each prefix
  // product is itself a binomial coefficient.
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    c = c / static_cast<std::uint64_t>(i) * num +
        c % static_cast<std::uint64_t>(i) * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

namespace {

long double log_tail(int n, int t, long double p, long double q) {
  // log-sum-exp over log C(n,j) + j log p + (n-j) log q.
  if (t <= 0) return 0.0L;  // log of probability 1 handled by caller
  long double best = -1e30L;
  std::vector<long double> terms;
  terms.reserve(static_cast<std::size_t>(n - t + 1));
  for (int j = t; j <= n; ++j) {
    const long double lc = std::lgamma(n + 1.0L) - std::lgamma(j + 1.0L) -
                           std::lgamma(n - j + 1.0L);
    const long double lt = lc + j * std::log(p) + (n - j) * std::log(q);
    terms.push_back(lt);
    best = std::max(best, lt);
  }
  long double acc = 0.0L;
  for (long double lt : terms) acc += std::exp(lt - best);
  return best + std::log(acc);
}

}  // namespace

long double binomial_upper_tail(int n, int t, const Rational& p_success) {
  if (n < 0) throw std::invalid_argument("binomial_upper_tail: negative n");
  if (t <= 0) return 1.0L;
  if (t > n) return 0.0L;
  if (p_success.num < 0 || p_success.num > p_success.den)
    throw std::invalid_argument("binomial_upper_tail: p outside [0,1]");
  const auto num = static_cast<std::uint64_t>(p_success.num);
  const auto den = static_cast<std::uint64_t>(p_success.den);
  if (num == 0) return 0.0L;
  if (num == den) return 1.0L;
  if (n <= 64) {
    BigNat total;
    for (int j = t; j <= n; ++j) {
      BigNat term(binom64(n, j));
      for (int i = 0; i < j; ++i) term.mul_small(num);
      for (int i = 0; i < n - j; ++i) term.mul_small(den - num);
      total.add(term);
    }
    const BigNat denom = big_pow(den, n);
    return total.to_long_double() / denom.to_long_double();
  }
  const long double p = static_cast<long double>(num) / static_cast<long double>(den);
  return std::exp(log_tail(n, t, p, 1.0L - p));
}

long double binomial_upper_tail(int n, int t, double p_success) {
  if (n < 0) throw std::invalid_argument("binomial_upper_tail: negative n");
  if (t <= 0) return 1.0L;
  if (t > n) return 0.0L;
  if (!(p_success >= 0.0 && p_success <= 1.0))
    throw std::invalid_argument("binomial_upper_tail: p outside [0,1]");
  if (p_success == 0.0) return 0.0L;
  if (p_success == 1.0) return 1.0L;
  if (n <= 64) {
    const auto p = static_cast<long double>(p_success);
    const long double q = 1.0L - p;
    long double acc = 0.0L;
    for (int j = t; j <= n; ++j)
      acc += static_cast<long double>(binom64(n, j)) * std::pow(p, j) * std::pow(q, n - j);
    return acc;
  }
  return std::exp(log_tail(n, t, static_cast<long double>(p_success),
                            1.0L - static_cast<long double>(p_success)));
}

}  // namespace qrl
