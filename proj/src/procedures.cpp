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

#include "sigfim/procedures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sigfim/errors.hpp"
#include "sigfim/stats.hpp"

namespace sigfim {
namespace {

constexpr double kExactHarmonicLimit = 1e6;

void check_unit_open(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

double harmonic_number(double m) {
  if (!(m >= 1.0)) throw std::invalid_argument("harmonic_number needs m >= 1");
  if (m <= kExactHarmonicLimit) {
    const auto n = static_cast<std::uint64_t>(std::floor(m));
    // Summing small terms first keeps the rounding error near one ulp.
    double h = 0.0;
    for (std::uint64_t j = n; j >= 1; --j) h += 1.0 / static_cast<double>(j);
    return h;
  }
  return std::log(m) + std::numbers::egamma + 1.0 / (2.0 * m) - 1.0 / (12.0 * m * m);
}

double hypothesis_count(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  const std::uint64_t exact = choose_saturating(n, k);
  if (exact != UINT64_MAX) return static_cast<double>(exact);
  return std::exp(stats::log_choose(static_cast<double>(n), static_cast<double>(k)));
}

ByRejection by_reject(std::span<const LogProb> pvalues, double m, double beta) {
  check_unit_open(beta, "beta");
  if (!(m >= 1.0) || m < static_cast<double>(pvalues.size()))
    throw std::invalid_argument("by_reject needs m >= max(1, number of p-values)");

  std::vector<std::size_t> order(pvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

  // p_(i) <= i beta / (m H_m), compared as logs.
  const double log_scale = std::log(beta) - std::log(m) - std::log(harmonic_number(m));
  std::size_t ell = 0;
  for (std::size_t i = order.size(); i >= 1; --i) {
    if (pvalues[order[i - 1]].log() <= std::log(static_cast<double>(i)) + log_scale) {
      ell = i;
      break;
    }
  }
  order.resize(ell);
  return {ell, std::move(order)};
}

ByOutcome procedure1(const TransactionDataset& d, const RandomModel& m, std::size_t k, double beta,
                     Count s_min, const MinerOptions& options) {
  check_unit_open(beta, "beta");
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (s_min == 0) throw std::invalid_argument("s_min must be positive");
  if (m.transactions() != d.size())
    throw std::invalid_argument("model and dataset disagree on the transaction count");

  const MiningResult frequent = mine_fixed_size(d, k, s_min, options);
  std::vector<LogProb> pvalues(frequent.size());
  for (std::size_t j = 0; j < frequent.size(); ++j) {
    const double f = expected_support(m, frequent.itemset(j)) / static_cast<double>(d.size());
    pvalues[j] = stats::binomial_tail(d.size(), std::clamp(f, 0.0, 1.0), frequent.support(j));
  }

  ByOutcome out;
  out.k = k;
  out.s_min = s_min;
  out.beta = beta;
  out.m = std::max(hypothesis_count(d.hypothesis_items(), k),
                   std::max(1.0, static_cast<double>(frequent.size())));
  out.tested = frequent.size();
  if (frequent.empty()) return out;

  const ByRejection r = by_reject(pvalues, out.m, beta);
  out.ell = r.ell;
  out.rejected.reserve(r.ell);
  for (std::size_t j : r.rejected) {
    const auto x = frequent.itemset(j);
    out.rejected.push_back({{x.begin(), x.end()}, frequent.support(j), pvalues[j]});
  }
  return out;
}

LevelBudget uniform_budget(std::size_t h, double alpha, double beta) {
  LevelBudget b;
  b.alpha.assign(h, alpha / static_cast<double>(h));
  b.beta_factor.assign(h, static_cast<double>(h) / beta);
  return b;
}

std::vector<Count> level_supports(Count s_min, Count s_max) {
  std::vector<Count> out;
  if (s_max < s_min) return out;
  out.push_back(s_min);
  if (s_max == s_min) return out;
  const std::size_t h = static_cast<std::size_t>(std::bit_width(s_max - s_min));
  for (std::size_t i = 1; i < h; ++i) out.push_back(s_min + (Count{1} << i));
  return out;
}

ThresholdOutcome procedure2(const TransactionDataset& d, const RandomModel& m, std::size_t k,
                            double alpha, double beta, Count s_min, const LambdaEstimate& lambdas,
                            const MinerOptions& options, const BudgetSchedule& schedule) {
  check_unit_open(alpha, "alpha");
  check_unit_open(beta, "beta");
  if (k == 0) throw std::invalid_argument("k must be positive");
  if (s_min == 0) throw std::invalid_argument("s_min must be positive");
  if (m.transactions() != d.size())
    throw std::invalid_argument("model and dataset disagree on the transaction count");
  if (lambdas.k != k) throw std::invalid_argument("lambda estimate was built for a different k");

  ThresholdOutcome out;
  out.k = k;
  out.s_min = s_min;
  out.alpha = alpha;
  out.beta = beta;

  const SupportHistogram q = support_histogram(d, k, s_min, options);
  out.s_max = q.total() == 0 ? 0 : q.max_support();
  const std::vector<Count> levels = level_supports(s_min, out.s_max);
  out.h = levels.size();
  if (levels.empty()) return out;

  const LevelBudget budget = schedule(out.h, alpha, beta);
  if (budget.alpha.size() != out.h || budget.beta_factor.size() != out.h)
    throw std::invalid_argument("budget schedule returned the wrong number of levels");
  double alpha_sum = 0.0, beta_sum = 0.0;
  for (std::size_t i = 0; i < out.h; ++i) {
    alpha_sum += budget.alpha[i];
    beta_sum += 1.0 / budget.beta_factor[i];
  }
  constexpr double kSlack = 1e-12;
  if (alpha_sum > alpha * (1.0 + kSlack) || beta_sum > beta * (1.0 + kSlack))
    throw std::invalid_argument("budget schedule overspends alpha or beta");

  for (std::size_t i = 0; i < out.h; ++i) {
    LevelRecord rec;
    rec.index = i;
    rec.support = levels[i];
    rec.q = q.at_least(levels[i]);
    const std::optional<double> lambda = lambdas.at(levels[i]);
    if (!lambda) throw std::invalid_argument("lambda estimate misses support " + std::to_string(levels[i]));
    rec.lambda = *lambda;
    rec.p_value = stats::poisson_tail(rec.lambda, rec.q);
    rec.alpha = budget.alpha[i];
    rec.beta_factor = budget.beta_factor[i];
    rec.rejected = rec.p_value.log() <= std::log(rec.alpha) &&
                   static_cast<double>(rec.q) >= rec.beta_factor * rec.lambda;
    out.levels.push_back(rec);
    if (rec.rejected) {
      out.s_star = rec.support;
      break;
    }
  }
  return out;
}

}  // namespace sigfim
