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
#include <span>
#include <vector>

#include "sigfim/dataset.hpp"
#include "sigfim/miner.hpp"

namespace sigfim {

struct Seed {
  std::uint64_t value = 0;
  auto operator<=>(const Seed&) const = default;
};

// Null model: item i enters each of t transactions independently with
// probability f_i.
class RandomModel {
 public:
  RandomModel(std::vector<double> frequencies, std::size_t transactions);
  // Same frequency f for items 0..n-1.
  static RandomModel uniform(std::size_t items, std::size_t transactions, double f);

  std::size_t transactions() const noexcept { return t_; }
  std::size_t universe() const noexcept { return f_.size(); }
  double frequency(Item i) const noexcept { return i < f_.size() ? f_[i] : 0.0; }
  std::span<const double> frequencies() const noexcept { return f_; }
  // Ids with f_i > 0, ascending.
  std::span<const Item> active_items() const noexcept { return active_; }

 private:
  std::vector<double> f_;
  std::size_t t_;
  std::vector<Item> active_;
};

RandomModel model_from_dataset(const TransactionDataset& d);

// Draws one dataset. The result is a pure function of (m, seed, stream):
// item i's inclusions come from Philox lane i of stream `stream` under key
// `seed`, placed by geometric skips over the transaction index.
TransactionDataset generate(const RandomModel& m, Seed seed, std::uint64_t stream = 0);

// t * prod f_i.
double expected_support(const RandomModel& m, std::span<const Item> x);
inline double expected_support(const RandomModel& m, const Itemset& x) {
  return expected_support(m, x.items());
}

// t times the product of the k largest frequencies.
double max_expected_support(const RandomModel& m, std::size_t k);

}  // namespace sigfim
