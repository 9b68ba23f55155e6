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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sigfim/chen_stein.hpp"
#include "sigfim/dataset.hpp"
#include "sigfim/log_prob.hpp"
#include "sigfim/miner.hpp"
#include "sigfim/random_model.hpp"

namespace sigfim {

// H_m = sum_{j=1}^m 1/j; asymptotic expansion above one million terms.
double harmonic_number(double m);

// C(n, k) as a double (exact while it fits in 64 bits).
double hypothesis_count(std::uint64_t n, std::uint64_t k);

struct ByRejection {
  std::size_t ell = 0;
  // Positions into the input, in ascending p-value order (ties by position).
  std::vector<std::size_t> rejected;
};

// Benjamini-Yekutieli step-up rule: ell = max{i : p_(i) <= i beta / (m H_m)}.
ByRejection by_reject(std::span<const LogProb> pvalues, double m, double beta);

struct RejectedItemset {
  std::vector<Item> items;
  Count support = 0;
  LogProb p_value;
};

struct ByOutcome {
  std::size_t k = 0;
  Count s_min = 0;
  double m = 0.0;
  double beta = 0.0;
  // Size of F_(k)(s_min), i.e. how many p-values were computed.
  std::size_t tested = 0;
  std::size_t ell = 0;
  std::vector<RejectedItemset> rejected;
};

// Per-itemset Binomial tests over F_(k)(s_min) with BY correction at FDR beta,
// m = C(n, k) where n = d.hypothesis_items().
ByOutcome procedure1(const TransactionDataset& d, const RandomModel& m, std::size_t k, double beta,
                     Count s_min, const MinerOptions& options = {});

// Per-level significance budget: reject level i when its p-value <= alpha[i]
// and Q_i >= beta_factor[i] * lambda_i. Needs sum alpha <= alpha and
// sum 1 / beta_factor <= beta.
struct LevelBudget {
  std::vector<double> alpha;
  std::vector<double> beta_factor;
};
using BudgetSchedule = std::function<LevelBudget(std::size_t h, double alpha, double beta)>;

// alpha_i = alpha / h, beta_i = h / beta.
LevelBudget uniform_budget(std::size_t h, double alpha, double beta);

// s_0 = s_min, s_i = s_min + 2^i for 1 <= i < h, h = floor(log2(s_max - s_min)) + 1.
// h = 1 when s_max == s_min and 0 when s_max < s_min.
std::vector<Count> level_supports(Count s_min, Count s_max);

struct LevelRecord {
  std::size_t index = 0;
  Count support = 0;
  Count q = 0;
  double lambda = 0.0;
  LogProb p_value;
  double alpha = 0.0;
  double beta_factor = 0.0;
  bool rejected = false;
};

struct ThresholdOutcome {
  std::size_t k = 0;
  // Absent means s* = infinity.
  std::optional<Count> s_star;
  Count s_min = 0;
  Count s_max = 0;
  std::size_t h = 0;
  double alpha = 0.0;
  double beta = 0.0;
  // Levels in scan order, up to and including the rejected one.
  std::vector<LevelRecord> levels;
};

// Scans the level grid and returns the first support whose observed Q_{k,s}
// is both improbable under Poisson(lambda) and large relative to lambda.
ThresholdOutcome procedure2(const TransactionDataset& d, const RandomModel& m, std::size_t k,
                            double alpha, double beta, Count s_min, const LambdaEstimate& lambdas,
                            const MinerOptions& options = {},
                            const BudgetSchedule& schedule = uniform_budget);

}  // namespace sigfim
