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

#include "sigfim/stats.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sigfim::stats {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)

// log(n!) - log(sqrt(2 pi n) (n / e)^n) for n = 0..15.
constexpr std::array<double, 16> kStirlingErrors = {
    0.0,
    0.08106146679532725821967,
    0.04134069595540929409382,
    0.02767792568499833914879,
    0.02079067210376509311152,
    0.01664469118982119216319,
    0.01387612882307074799875,
    0.01189670994589177009506,
    0.01041126526197209649748,
    0.009255462182712732917729,
    0.008330563433362871256469,
    0.007573675487951840794972,
    0.006942840107209529865664,
    0.00640899418800420706844,
    0.005951370112758847735624,
    0.005554733551962801371039,
};

double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0) return kStirlingErrors[static_cast<std::size_t>(n)];
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / m) + m - x, without cancellation when x ~ m.
// Long double keeps the rounding of m = t p from dominating deep tails.
long double deviance(long double x, long double m) {
  if (std::fabs(x - m) < 0.1L * (x + m)) {
    long double v = (x - m) / (x + m);
    long double s = (x - m) * v;
    if (std::fabs(s) < std::numeric_limits<long double>::min()) return s;
    long double ej = 2.0L * x * v;
    v *= v;
    for (int j = 1; j < 2000; ++j) {
      ej *= v;
      const long double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / m) + m - x;
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
}

// Compensated running sum.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::fabs(sum_) >= std::fabs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr double kNegligible = 1e-18;

// Sums a unimodal run of point masses starting at its largest term and moving
// away from the mode. `log_mass(x)` gives the log mass, `ratio(x)` the factor
// from x to the next term. Returns the log of the sum.
template <class LogMass, class Ratio, class Step, class Done>
double sum_tail_log(std::uint64_t x, LogMass log_mass, Ratio ratio, Step step, Done done) {
  const double head = log_mass(x);
  if (head == kNegInf) return kNegInf;
  Accumulator acc;
  acc.add(1.0);
  while (!done(x)) {
    x = step(x);
    const double term = std::exp(log_mass(x) - head);
    acc.add(term);
    const double r_next = done(x) ? 0.0 : ratio(x);
    if (r_next < 1.0 && term * r_next / (1.0 - r_next) < kNegligible * acc.value()) break;
  }
  return head + std::log(acc.value());
}

double log1m_exp(double a) {
  // log(1 - e^a) for a <= 0.
  if (a == kNegInf) return 0.0;
  return a > -std::numbers::ln2 ? std::log(-std::expm1(a)) : std::log1p(-std::exp(a));
}

double binomial_upper_log(std::uint64_t t, double p, std::uint64_t s) {
  const double odds = p / (1.0 - p);
  return sum_tail_log(
      s, [&](std::uint64_t x) { return log_binomial_pmf(t, p, x); },
      [&](std::uint64_t x) {
        return static_cast<double>(t - x) / static_cast<double>(x + 1) * odds;
      },
      [](std::uint64_t x) { return x + 1; }, [&](std::uint64_t x) { return x >= t; });
}

double binomial_lower_log(std::uint64_t t, double p, std::uint64_t x0) {
  const double inv_odds = (1.0 - p) / p;
  return sum_tail_log(
      x0, [&](std::uint64_t x) { return log_binomial_pmf(t, p, x); },
      [&](std::uint64_t x) {
        return static_cast<double>(x) / static_cast<double>(t - x + 1) * inv_odds;
      },
      [](std::uint64_t x) { return x - 1; }, [](std::uint64_t x) { return x == 0; });
}

double poisson_upper_log(double lambda, std::uint64_t q) {
  return sum_tail_log(
      q, [&](std::uint64_t x) { return log_poisson_pmf(lambda, x); },
      [&](std::uint64_t x) { return lambda / static_cast<double>(x + 1); },
      [](std::uint64_t x) { return x + 1; },
      [](std::uint64_t x) { return x == std::numeric_limits<std::uint64_t>::max(); });
}

double poisson_lower_log(double lambda, std::uint64_t x0) {
  return sum_tail_log(
      x0, [&](std::uint64_t x) { return log_poisson_pmf(lambda, x); },
      [&](std::uint64_t x) { return static_cast<double>(x) / lambda; },
      [](std::uint64_t x) { return x - 1; }, [](std::uint64_t x) { return x == 0; });
}

}  // namespace

double log_binomial_pmf(std::uint64_t t, double p, std::uint64_t x) {
  check_probability(p);
  if (x > t) return kNegInf;
  if (p == 0.0) return x == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return x == t ? 0.0 : kNegInf;
  const double n = static_cast<double>(t);
  if (x == 0) return n * std::log1p(-p);
  if (x == t) return n * std::log(p);
  const long double nl = static_cast<long double>(t), pl = p;
  const double xd = static_cast<double>(x);
  const long double lc = static_cast<long double>(stirling_error(n)) - stirling_error(xd) -
                         stirling_error(n - xd) - deviance(x, nl * pl) -
                         deviance(static_cast<long double>(t - x), nl * (1.0L - pl));
  const double lf = kLog2Pi + std::log(xd) + std::log1p(-xd / n);
  return static_cast<double>(lc - 0.5L * lf);
}

double log_poisson_pmf(double lambda, std::uint64_t x) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
  if (lambda == 0.0) return x == 0 ? 0.0 : kNegInf;
  if (x == 0) return -lambda;
  const double xd = static_cast<double>(x);
  return static_cast<double>(-static_cast<long double>(stirling_error(xd)) - deviance(xd, lambda) -
                             0.5L * (kLog2Pi + std::log(xd)));
}

LogProb binomial_tail(std::uint64_t t, double p, std::uint64_t s) {
  check_probability(p);
  if (s == 0) return LogProb::one();
  if (s > t || p == 0.0) return LogProb::zero();
  if (p == 1.0) return LogProb::one();
  const double mean = static_cast<double>(t) * p;
  if (static_cast<double>(s) > mean) return LogProb::from_log(binomial_upper_log(t, p, s));
  return LogProb::from_log(log1m_exp(binomial_lower_log(t, p, s - 1)));
}

LogProb binomial_cdf(std::uint64_t t, double p, std::uint64_t x) {
  check_probability(p);
  if (x >= t || p == 0.0) return LogProb::one();
  if (p == 1.0) return LogProb::zero();
  const double mean = static_cast<double>(t) * p;
  if (static_cast<double>(x + 1) > mean) {
    return LogProb::from_log(log1m_exp(binomial_upper_log(t, p, x + 1)));
  }
  return LogProb::from_log(binomial_lower_log(t, p, x));
}

LogProb poisson_tail(double lambda, std::uint64_t q) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
  if (q == 0) return LogProb::one();
  if (lambda == 0.0) return LogProb::zero();
  if (static_cast<double>(q) > lambda) return LogProb::from_log(poisson_upper_log(lambda, q));
  return LogProb::from_log(log1m_exp(poisson_lower_log(lambda, q - 1)));
}

LogProb poisson_cdf(double lambda, std::uint64_t x) {
  if (!(lambda >= 0.0) || std::isinf(lambda)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
  if (lambda == 0.0) return LogProb::one();
  if (static_cast<double>(x + 1) > lambda) {
    return LogProb::from_log(log1m_exp(poisson_upper_log(lambda, x + 1)));
  }
  return LogProb::from_log(poisson_lower_log(lambda, x));
}

double expected_pairs_example(std::uint64_t n_items, std::uint64_t t, double f, std::uint64_t s) {
  check_probability(f);
  const double pairs = 0.5 * static_cast<double>(n_items) * static_cast<double>(n_items - 1);
  if (n_items < 2) return 0.0;
  return pairs * binomial_tail(t, f * f, s).prob();
}

double log_choose(double n, double k) {
  if (k < 0.0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace sigfim::stats
