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

#include "sigfim/analytic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sigfim/stats.hpp"

namespace sigfim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_factorial(double m) { return std::lgamma(m + 1.0); }

// log C(m; x, y, z); -inf when x + y + z > m.
double log_multinomial(double m, double x, double y, double z) {
  if (x + y + z > m) return kNegInf;
  return log_factorial(m) - log_factorial(x) - log_factorial(y) - log_factorial(z) -
         log_factorial(m - x - y - z);
}

double log_sum_exp(const std::vector<double>& v) {
  double top = kNegInf;
  for (double x : v) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - top);
  return top + std::log(acc);
}

// log(C(n,k)^2 - C(n,k) C(n-k,k)): ordered pairs of k-sets that intersect.
double log_overlapping_pairs(std::uint64_t n, std::uint64_t k) {
  double disjoint_share = 1.0;
  if (n >= 2 * k) {
    for (std::uint64_t i = 0; i < k; ++i) {
      disjoint_share *= static_cast<double>(n - k - i) / static_cast<double>(n - i);
    }
  } else {
    disjoint_share = 0.0;
  }
  return 2.0 * stats::log_choose(static_cast<double>(n), static_cast<double>(k)) +
         std::log1p(-disjoint_share);
}

void check_shape(std::uint64_t n, std::uint64_t k, std::uint64_t s) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  if (k > n) throw std::invalid_argument("k must not exceed n");
}

AnalyticBounds finish(double log_b1, double log_b2) {
  return {std::exp(log_b1), std::exp(log_b2), log_b1, log_b2};
}

// log of sum_g C(n; g, k-g, k-g) sum_i C(t; i, s-i, s-i) exp(term(g, i)).
template <class Term>
double log_b2_sum(std::uint64_t n, std::uint64_t k, std::uint64_t s, std::uint64_t t, Term term) {
  std::vector<double> parts;
  for (std::uint64_t g = 1; g < k; ++g) {
    const double lg = log_multinomial(static_cast<double>(n), static_cast<double>(g),
                                      static_cast<double>(k - g), static_cast<double>(k - g));
    if (lg == kNegInf) continue;
    for (std::uint64_t i = 0; i <= s; ++i) {
      const double li = log_multinomial(static_cast<double>(t), static_cast<double>(i),
                                        static_cast<double>(s - i), static_cast<double>(s - i));
      if (li == kNegInf) continue;
      const double lt = term(g, i);
      if (lt == kNegInf) continue;
      parts.push_back(lg + li + lt);
    }
  }
  return log_sum_exp(parts);
}

}  // namespace

AnalyticBounds analytic_bounds_uniform(std::uint64_t n, std::uint64_t k, std::uint64_t s,
                                       std::uint64_t t, double gamma) {
  check_shape(n, k, s);
  const double p = gamma / static_cast<double>(n);
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("gamma / n must lie in (0, 1)");
  const double log_p = std::log(p);
  const double tail =
      stats::binomial_tail(t, std::pow(p, static_cast<double>(k)), s).log();
  const double log_b1 = log_overlapping_pairs(n, k) + 2.0 * tail;
  const double kd = static_cast<double>(k);
  const double sd = static_cast<double>(s);
  const double log_b2 = log_b2_sum(n, k, s, t, [&](std::uint64_t g, std::uint64_t i) {
    const double id = static_cast<double>(i);
    return ((2.0 * kd - static_cast<double>(g)) * id + 2.0 * kd * (sd - id)) * log_p;
  });
  return finish(log_b1, log_b2);
}

AnalyticBounds analytic_bounds_moment(std::uint64_t n, std::uint64_t k, std::uint64_t s,
                                      std::uint64_t t, double moment_2s) {
  check_shape(n, k, s);
  if (!(moment_2s >= 0.0 && moment_2s <= 1.0)) {
    throw std::invalid_argument("E[R^{2s}] must lie in [0, 1]");
  }
  const double log_m = moment_2s == 0.0 ? kNegInf : std::log(moment_2s);
  const double kd = static_cast<double>(k);
  const double sd = static_cast<double>(s);
  const double log_b1 = log_overlapping_pairs(n, k) +
                        2.0 * stats::log_choose(static_cast<double>(t), sd) + kd * log_m;
  const double log_b2 = log_b2_sum(n, k, s, t, [&](std::uint64_t g, std::uint64_t i) {
    const double exponent = kd - static_cast<double>(i) * static_cast<double>(g) / (2.0 * sd);
    return log_m == kNegInf ? kNegInf : exponent * log_m;
  });
  return finish(log_b1, log_b2);
}

}  // namespace sigfim
