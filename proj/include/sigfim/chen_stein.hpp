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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sigfim/dataset.hpp"
#include "sigfim/miner.hpp"
#include "sigfim/random_model.hpp"

namespace sigfim {

// Empirical Chen-Stein quantities over a support grid.
//
// For every support s in `supports`:
//   b1(s) = sum_X sum_{Y in I(X)} p_X(s) p_Y(s)      (Y = X included)
//   b2(s) = sum_X sum_{Y != X, Y in I(X)} p_{X,Y}(s)
// where I(X) holds the k-itemsets meeting X, and probabilities are frequencies
// over the Monte Carlo trials. Itemsets never frequent in any trial count as 0.
struct ChenSteinCurve {
  std::size_t k = 0;
  std::vector<Count> supports;
  std::vector<double> b1;
  std::vector<double> b2;
  // Mean Q-hat_{k,s} over the same trials.
  std::vector<double> lambda;
  std::size_t delta_trials = 0;
  double epsilon = 0.0;
  Seed seed;
  // Threshold the window W was mined at.
  Count s_tilde = 0;
  std::size_t window_size = 0;
  std::optional<Count> s_min_hat;

  // Index of s in `supports`, if stored.
  std::optional<std::size_t> index_of(Count s) const;
  double b_sum(std::size_t j) const { return b1[j] + b2[j]; }
};

struct LambdaEstimate {
  std::size_t k = 0;
  std::vector<Count> supports;
  std::vector<double> lambda;
  std::size_t delta_trials = 0;
  Seed seed;

  // No trial has a k-itemset above this support, so lambda is 0 beyond it.
  Count max_observed_support = 0;

  // lambda at a stored support, or 0 above max_observed_support.
  std::optional<double> at(Count s) const;
};

struct MonteCarloOptions {
  // 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::uint64_t window_cap = 10'000'000;
  MinerOptions miner;
};

// Delta datasets drawn from one model; trial r uses Philox stream r under the
// ensemble seed, so a trial can be regenerated at any time and any thread
// count gives the same results. Keeps, per trial, the k-itemsets frequent at
// the lowest threshold mined so far.
class MonteCarloEnsemble {
 public:
  MonteCarloEnsemble(RandomModel model, std::size_t k, std::size_t trials, Seed seed,
                     MonteCarloOptions options = {});

  const RandomModel& model() const noexcept { return model_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t trials() const noexcept { return trials_; }
  Seed seed() const noexcept { return seed_; }

  // Ensures every trial is mined at a threshold <= s.
  void mine_down_to(Count s);
  // 0 before the first mine.
  Count floor() const noexcept { return floor_; }
  // Largest support of any retained itemset in any trial (0 if none).
  Count max_observed_support() const noexcept { return max_support_; }
  // True when no trial has a k-itemset with support >= s (s >= floor()).
  bool window_empty(Count s) const;

  // Curves on the grid s_lo .. max_observed_support() + 1. Requires s_lo >= floor().
  ChenSteinCurve curves(Count s_lo) const;
  LambdaEstimate lambda(std::span<const Count> supports) const;

 private:
  struct Trial {
    std::vector<Item> items;
    std::vector<Count> supports;
  };

  RandomModel model_;
  std::size_t k_;
  std::size_t trials_;
  Seed seed_;
  MonteCarloOptions options_;
  std::vector<Trial> runs_;
  Count floor_ = 0;
  Count max_support_ = 0;
};

// Generates Delta trials and computes curves from s_lo. Empty optional when no
// k-itemset reaches s_lo in any trial: the caller should lower s_lo.
std::optional<ChenSteinCurve> estimate_b_curves(const RandomModel& m, std::size_t k, Count s_lo,
                                                std::size_t trials, Seed seed,
                                                const MonteCarloOptions& options = {});

struct PoissonThreshold {
  Count s_min_hat = 0;
  ChenSteinCurve curve;
};

// Halving search for the smallest support with b1 + b2 <= epsilon / 4, starting
// from the largest expected k-itemset support. Uses `ensemble` as the trial
// source so the same datasets can then serve lambda estimates.
PoissonThreshold find_poisson_threshold(MonteCarloEnsemble& ensemble, double epsilon);
PoissonThreshold find_poisson_threshold(const RandomModel& m, std::size_t k, std::size_t trials,
                                        double epsilon, Seed seed,
                                        const MonteCarloOptions& options = {});

// ceil(8 ln(1/delta) / epsilon).
std::size_t required_trials(double epsilon, double delta);

LambdaEstimate estimate_lambda(const RandomModel& m, std::size_t k, std::span<const Count> supports,
                               std::size_t trials, Seed seed,
                               const MonteCarloOptions& options = {});

}  // namespace sigfim
