// Copyright 2026 The sigfim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Arbitrary-precision reference tails for the tests. Each tail starts from a
// pmf evaluated with lgamma at 50 digits and then walks the pmf recurrence
// away from the mode until the remaining terms cannot matter.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>

namespace sigfim::oracle {

using Real = boost::multiprecision::mpfr_float_50;

inline Real binomial_pmf(std::uint64_t t, double p, std::uint64_t x) {
  using boost::multiprecision::exp;
  using boost::multiprecision::lgamma;
  using boost::multiprecision::log;
  using boost::multiprecision::log1p;
  const Real P(p);
  if (x > t) return Real(0);
  Real l = lgamma(Real(t) + 1) - lgamma(Real(x) + 1) - lgamma(Real(t - x) + 1);
  if (x > 0) l += Real(x) * log(P);
  if (t > x) l += Real(t - x) * log1p(-P);
  return exp(l);
}

inline Real poisson_pmf(double lambda, std::uint64_t x) {
  using boost::multiprecision::exp;
  using boost::multiprecision::lgamma;
  using boost::multiprecision::log;
  const Real L(lambda);
  return exp(Real(x) * log(L) - L - lgamma(Real(x) + 1));
}

// Sums first, first * ratio(x0), ... moving by `step` from x0 to `last`,
// where ratio(x) = pmf(x + step) / pmf(x) and terms shrink along the way.
template <class Ratio>
Real walk(Real first, std::int64_t x0, std::int64_t step, std::int64_t last, Ratio ratio) {
  Real sum = 0, term = first;
  const Real tiny("1e-45");
  for (std::int64_t x = x0;; x += step) {
    sum += term;
    if (term < tiny * sum || x == last) break;
    term *= ratio(static_cast<std::uint64_t>(x));
  }
  return sum;
}

// Pr(Binomial(t, p) >= s).
inline Real binomial_tail(std::uint64_t t, double p, std::uint64_t s) {
  if (s == 0) return Real(1);
  if (s > t) return Real(0);
  const Real P(p), odds = P / (1 - P);
  const double mean = static_cast<double>(t) * p;
  const auto T = static_cast<std::int64_t>(t);
  if (static_cast<double>(s) > mean) {
    return walk(binomial_pmf(t, p, s), static_cast<std::int64_t>(s), 1, T,
                [&](std::uint64_t x) { return odds * Real(t - x) / Real(x + 1); });
  }
  return Real(1) - walk(binomial_pmf(t, p, s - 1), static_cast<std::int64_t>(s) - 1, -1, 0,
                        [&](std::uint64_t x) { return Real(x) / (odds * Real(t - x + 1)); });
}

// Pr(Poisson(lambda) >= q).
inline Real poisson_tail(double lambda, std::uint64_t q) {
  if (q == 0) return Real(1);
  const Real L(lambda);
  if (static_cast<double>(q) > lambda) {
    return walk(poisson_pmf(lambda, q), static_cast<std::int64_t>(q), 1, INT64_MAX,
                [&](std::uint64_t x) { return L / Real(x + 1); });
  }
  return Real(1) - walk(poisson_pmf(lambda, q - 1), static_cast<std::int64_t>(q) - 1, -1, 0,
                        [&](std::uint64_t x) { return Real(x) / L; });
}

}  // namespace sigfim::oracle
