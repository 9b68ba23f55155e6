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

#include "sigfim/chen_stein.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "sigfim/errors.hpp"

namespace sigfim {

namespace {

__extension__ using Wide = __int128;

constexpr Item kPad = std::numeric_limits<Item>::max();

double ratio(Wide num, long double den) {
  return static_cast<double>(static_cast<long double>(num) / den);
}

// Row-major table of fixed-width item rows with a lexicographic index sort.
std::vector<std::uint32_t> rank_rows(const std::vector<Item>& rows, std::size_t width,
                                     std::size_t& distinct) {
  const std::size_t n = width == 0 ? 0 : rows.size() / width;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto at = [&](std::size_t j) { return rows.begin() + static_cast<std::ptrdiff_t>(j * width); };
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(at(a), at(a) + static_cast<std::ptrdiff_t>(width), at(b),
                                        at(b) + static_cast<std::ptrdiff_t>(width));
  };
  std::stable_sort(order.begin(), order.end(), less);
  std::vector<std::uint32_t> id(n);
  distinct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && less(order[j - 1], order[j])) ++distinct;
    id[order[j]] = static_cast<std::uint32_t>(distinct);
  }
  if (n > 0) ++distinct;
  return id;
}

}  // namespace

std::optional<std::size_t> ChenSteinCurve::index_of(Count s) const {
  if (supports.empty() || s < supports.front() || s > supports.back()) return std::nullopt;
  return static_cast<std::size_t>(s - supports.front());
}

std::optional<double> LambdaEstimate::at(Count s) const {
  for (std::size_t j = 0; j < supports.size(); ++j) {
    if (supports[j] == s) return lambda[j];
  }
  if (s > max_observed_support) return 0.0;
  return std::nullopt;
}

MonteCarloEnsemble::MonteCarloEnsemble(RandomModel model, std::size_t k, std::size_t trials,
                                       Seed seed, MonteCarloOptions options)
    : model_(std::move(model)), k_(k), trials_(trials), seed_(seed), options_(options) {
  if (k_ < 1) throw std::invalid_argument("itemset size k must be >= 1");
  if (trials_ < 1) throw std::invalid_argument("Monte Carlo needs at least one trial");
  if (k_ >= 31) throw std::invalid_argument("itemset size k too large for subset enumeration");
}

void MonteCarloEnsemble::mine_down_to(Count s) {
  if (s < 1) throw std::invalid_argument("support threshold must be >= 1");
  if (floor_ != 0 && floor_ <= s) return;
  std::vector<Trial> runs(trials_);
  detail::parallel_for(trials_, options_.threads, [&](std::size_t r) {
    const TransactionDataset d = generate(model_, seed_, r);
    std::vector<Item> items;
    std::vector<Count> supports;
    for_each_frequent(d, k_, s, options_.miner, [&](std::span<const Item> x, Count c) {
      if (supports.size() >= options_.window_cap) {
        throw CapacityError("frequent itemsets in one Monte Carlo trial", options_.window_cap);
      }
      items.insert(items.end(), x.begin(), x.end());
      supports.push_back(c);
    });
    // Canonical order so later passes do not depend on the mining strategy.
    MiningResult sorted(k_, s, std::move(items), std::move(supports));
    Trial t;
    t.supports.assign(sorted.supports().begin(), sorted.supports().end());
    t.items.reserve(sorted.size() * k_);
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      const auto x = sorted.itemset(j);
      t.items.insert(t.items.end(), x.begin(), x.end());
    }
    runs[r] = std::move(t);
  });
  runs_ = std::move(runs);
  floor_ = s;
  max_support_ = 0;
  for (const auto& t : runs_) {
    for (Count c : t.supports) max_support_ = std::max(max_support_, c);
  }
}

bool MonteCarloEnsemble::window_empty(Count s) const {
  if (floor_ == 0 || s < floor_) throw std::logic_error("ensemble not mined down to this support");
  return max_support_ < s;
}

ChenSteinCurve MonteCarloEnsemble::curves(Count s_lo) const {
  if (floor_ == 0 || s_lo < floor_) throw std::logic_error("ensemble not mined down to this support");
  const std::size_t k = k_;
  const Count s_hi = std::max(s_lo, max_support_ + 1);
  const std::size_t grid = static_cast<std::size_t>(s_hi - s_lo + 1);

  // Occurrences (trial, row) with support >= s_lo, trial by trial.
  std::vector<Item> occ_items;
  std::vector<Count> occ_support;
  std::vector<std::size_t> trial_begin(trials_ + 1, 0);
  for (std::size_t r = 0; r < trials_; ++r) {
    const Trial& t = runs_[r];
    for (std::size_t j = 0; j < t.supports.size(); ++j) {
      if (t.supports[j] < s_lo) continue;
      occ_items.insert(occ_items.end(), t.items.begin() + static_cast<std::ptrdiff_t>(j * k),
                       t.items.begin() + static_cast<std::ptrdiff_t>((j + 1) * k));
      occ_support.push_back(t.supports[j]);
    }
    trial_begin[r + 1] = occ_support.size();
  }
  const std::size_t occurrences = occ_support.size();

  std::size_t window = 0;
  const std::vector<std::uint32_t> xid = rank_rows(occ_items, k, window);
  if (window > options_.window_cap) throw CapacityError("Chen-Stein window |W|", options_.window_cap);

  // One representative row per distinct X.
  std::vector<std::size_t> rep(window, 0);
  for (std::size_t o = occurrences; o-- > 0;) rep[xid[o]] = o;

  // Every nonempty subset S of every X, padded to width k.
  const std::size_t masks = (std::size_t{1} << k) - 1;
  std::vector<Item> subset_rows(window * masks * k, kPad);
  for (std::size_t x = 0; x < window; ++x) {
    const Item* row = occ_items.data() + rep[x] * k;
    for (std::size_t m = 1; m <= masks; ++m) {
      Item* out = subset_rows.data() + (x * masks + (m - 1)) * k;
      for (std::size_t b = 0; b < k; ++b) {
        if (m & (std::size_t{1} << b)) *out++ = row[b];
      }
    }
  }
  std::size_t subsets = 0;
  const std::vector<std::uint32_t> sid = rank_rows(subset_rows, k, subsets);
  subset_rows.clear();
  subset_rows.shrink_to_fit();
  std::vector<int> sign(masks);
  for (std::size_t m = 1; m <= masks; ++m) sign[m - 1] = (std::popcount(m) % 2 == 1) ? 1 : -1;

  // Adding one occurrence of X to a family with subset counts `c` changes
  // sum_S sign(S) c_S^2 by sum_S sign(S) (2 c_S + 1), then bumps each c_S.
  auto add = [&](std::vector<std::uint64_t>& c, std::uint32_t x) {
    Wide delta = 0;
    const std::uint32_t* ids = sid.data() + static_cast<std::size_t>(x) * masks;
    for (std::size_t m = 0; m < masks; ++m) {
      std::uint64_t& cs = c[ids[m]];
      delta += static_cast<Wide>(sign[m]) * static_cast<Wide>(2 * cs + 1);
      ++cs;
    }
    return delta;
  };

  // b1 numerator: sum over ordered overlapping (X, Y) of c_X(s) c_Y(s), which by
  // inclusion-exclusion over shared subsets equals sum_S sign(S) C_S(s)^2.
  std::vector<std::size_t> by_support(occurrences);
  std::iota(by_support.begin(), by_support.end(), std::size_t{0});
  std::stable_sort(by_support.begin(), by_support.end(),
                   [&](std::size_t a, std::size_t b) { return occ_support[a] > occ_support[b]; });
  std::vector<Wide> b1_num(grid, 0);
  std::vector<Count> lambda_num(grid, 0);
  {
    std::vector<std::uint64_t> c(subsets, 0);
    Wide total = 0;
    Count active = 0;
    std::size_t ptr = 0;
    for (std::size_t g = grid; g-- > 0;) {
      const Count s = s_lo + g;
      while (ptr < occurrences && occ_support[by_support[ptr]] >= s) {
        total += add(c, xid[by_support[ptr]]);
        ++active;
        ++ptr;
      }
      b1_num[g] = total;
      lambda_num[g] = active;
    }
  }

  // b2 numerator: within each trial, ordered overlapping distinct pairs both
  // frequent at s, i.e. sum_S sign(S) D_S(s)^2 - N(s), summed over trials.
  std::vector<Wide> b2_delta(grid + 1, 0);
  {
    std::vector<std::uint64_t> d(subsets, 0);
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < trials_; ++r) {
      rows.resize(trial_begin[r + 1] - trial_begin[r]);
      std::iota(rows.begin(), rows.end(), trial_begin[r]);
      std::stable_sort(rows.begin(), rows.end(),
                       [&](std::size_t a, std::size_t b) { return occ_support[a] > occ_support[b]; });
      Wide u = 0;
      std::size_t j = 0;
      while (j < rows.size()) {
        const Count v = occ_support[rows[j]];
        const Wide before = u;
        while (j < rows.size() && occ_support[rows[j]] == v) {
          u += add(d, xid[rows[j]]) - 1;
          ++j;
        }
        b2_delta[static_cast<std::size_t>(v - s_lo)] += u - before;
      }
      for (std::size_t o : rows) {
        const std::uint32_t* ids = sid.data() + static_cast<std::size_t>(xid[o]) * masks;
        for (std::size_t m = 0; m < masks; ++m) d[ids[m]] = 0;
      }
    }
  }

  ChenSteinCurve curve;
  curve.k = k;
  curve.delta_trials = trials_;
  curve.seed = seed_;
  curve.s_tilde = s_lo;
  curve.window_size = window;
  curve.supports.resize(grid);
  curve.b1.resize(grid);
  curve.b2.resize(grid);
  curve.lambda.resize(grid);
  const long double delta = static_cast<long double>(trials_);
  Wide b2_running = 0;
  for (std::size_t g = grid; g-- > 0;) {
    b2_running += b2_delta[g];
    curve.supports[g] = s_lo + g;
    curve.b1[g] = ratio(b1_num[g], delta * delta);
    curve.b2[g] = ratio(b2_running, delta);
    curve.lambda[g] = static_cast<double>(static_cast<long double>(lambda_num[g]) / delta);
  }
  return curve;
}

LambdaEstimate MonteCarloEnsemble::lambda(std::span<const Count> supports) const {
  LambdaEstimate est;
  est.k = k_;
  est.delta_trials = trials_;
  est.seed = seed_;
  est.max_observed_support = max_support_;
  est.supports.assign(supports.begin(), supports.end());
  est.lambda.reserve(supports.size());
  for (Count s : supports) {
    if (floor_ == 0 || s < floor_) throw std::logic_error("ensemble not mined down to this support");
    Count total = 0;
    for (const auto& t : runs_) {
      total += static_cast<Count>(std::count_if(t.supports.begin(), t.supports.end(),
                                                [&](Count c) { return c >= s; }));
    }
    est.lambda.push_back(
        static_cast<double>(static_cast<long double>(total) / static_cast<long double>(trials_)));
  }
  return est;
}

std::optional<ChenSteinCurve> estimate_b_curves(const RandomModel& m, std::size_t k, Count s_lo,
                                                std::size_t trials, Seed seed,
                                                const MonteCarloOptions& options) {
  if (s_lo < 1) throw std::invalid_argument("s_lo must be >= 1");
  MonteCarloEnsemble ensemble(m, k, trials, seed, options);
  ensemble.mine_down_to(s_lo);
  if (ensemble.window_empty(s_lo)) return std::nullopt;
  return ensemble.curves(s_lo);
}

PoissonThreshold find_poisson_threshold(MonteCarloEnsemble& ensemble, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const double target = epsilon / 4.0;
  const double top = max_expected_support(ensemble.model(), ensemble.k());
  Count s_tilde = std::max<Count>(1, static_cast<Count>(std::floor(top)));
  // Upper end of the search once a halving step has shown b <= epsilon/4 there.
  std::optional<Count> s_max;
  while (true) {
    ensemble.mine_down_to(s_tilde);
    if (ensemble.window_empty(s_tilde)) {
      if (s_tilde == 1) {
        throw PoissonRegimeError("Poisson regime not reached: no k-itemset is frequent in any trial");
      }
      s_tilde = std::max<Count>(1, s_tilde / 2);
      continue;
    }
    ChenSteinCurve curve = ensemble.curves(s_tilde);
    curve.epsilon = epsilon;
    if (curve.b_sum(0) <= target) {
      if (s_tilde == 1) {
        curve.s_min_hat = 1;
        return {1, std::move(curve)};
      }
      s_max = s_tilde;
      s_tilde = std::max<Count>(1, s_tilde / 2);
      continue;
    }
    const Count last = s_max ? std::min(*s_max, curve.supports.back()) : curve.supports.back();
    for (std::size_t j = 1; j < curve.supports.size() && curve.supports[j] <= last; ++j) {
      if (curve.b_sum(j) <= target) {
        curve.s_min_hat = curve.supports[j];
        return {curve.supports[j], std::move(curve)};
      }
    }
    throw PoissonRegimeError("Poisson regime not reached: b1 + b2 > epsilon/4 at every support up to " +
                             std::to_string(last));
  }
}

PoissonThreshold find_poisson_threshold(const RandomModel& m, std::size_t k, std::size_t trials,
                                        double epsilon, Seed seed,
                                        const MonteCarloOptions& options) {
  if (trials < 1) throw PoissonRegimeError("Poisson regime not reached: no Monte Carlo trials");
  MonteCarloEnsemble ensemble(m, k, trials, seed, options);
  return find_poisson_threshold(ensemble, epsilon);
}

std::size_t required_trials(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(8.0 * std::log(1.0 / delta) / epsilon));
}

LambdaEstimate estimate_lambda(const RandomModel& m, std::size_t k, std::span<const Count> supports,
                               std::size_t trials, Seed seed, const MonteCarloOptions& options) {
  MonteCarloEnsemble ensemble(m, k, trials, seed, options);
  Count lowest = 1;
  if (!supports.empty()) lowest = std::max<Count>(1, *std::min_element(supports.begin(), supports.end()));
  ensemble.mine_down_to(lowest);
  return ensemble.lambda(supports);
}

}  // namespace sigfim
