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
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigfim/dataset.hpp"

namespace sigfim {

// A k-itemset in canonical form: distinct ids, ascending, k >= 1.
class Itemset {
 public:
  explicit Itemset(std::vector<Item> items);
  Itemset(std::initializer_list<Item> items) : Itemset(std::vector<Item>(items)) {}

  // Sorts and de-duplicates first.
  static Itemset canonical(std::vector<Item> items);

  std::size_t size() const noexcept { return items_.size(); }
  std::span<const Item> items() const noexcept { return items_; }
  Item operator[](std::size_t j) const noexcept { return items_[j]; }

  auto operator<=>(const Itemset&) const = default;

 private:
  std::vector<Item> items_;
};

// All k-itemsets of support >= s, in lexicographic order. Immutable.
class MiningResult {
 public:
  MiningResult(std::size_t k, Count s) : k_(k), s_(s) {}
  // `items` holds size() rows of k ids each; rows are sorted here.
  MiningResult(std::size_t k, Count s, std::vector<Item> items, std::vector<Count> supports);

  std::size_t k() const noexcept { return k_; }
  Count threshold() const noexcept { return s_; }
  std::size_t size() const noexcept { return supports_.size(); }
  bool empty() const noexcept { return supports_.empty(); }

  std::span<const Item> itemset(std::size_t j) const noexcept { return {items_.data() + j * k_, k_}; }
  Count support(std::size_t j) const noexcept { return supports_[j]; }
  std::span<const Count> supports() const noexcept { return supports_; }

  std::optional<Count> find(std::span<const Item> x) const;

  bool operator==(const MiningResult&) const = default;

 private:
  std::size_t k_;
  Count s_;
  std::vector<Item> items_;
  std::vector<Count> supports_;
};

enum class MiningStrategy {
  automatic,
  pair_array,        // k = 2 only: dense triangular count table
  combination_hash,  // hash every k-subset of each projected transaction
  vertical,          // depth-first tid-list intersection, level by level
};

struct MinerOptions {
  // Upper bound on live candidates / materialized entries.
  std::uint64_t cap = 50'000'000;
  MiningStrategy strategy = MiningStrategy::automatic;
};

using ItemsetVisitor = std::function<void(std::span<const Item>, Count)>;

// Calls `visit` once per k-itemset with support >= s. Visiting order is
// unspecified. Throws CapacityError when a strategy's live state passes the cap.
void for_each_frequent(const TransactionDataset& d, std::size_t k, Count s,
                       const MinerOptions& options, const ItemsetVisitor& visit);

MiningResult mine_fixed_size(const TransactionDataset& d, std::size_t k, Count s,
                             const MinerOptions& options = {});

// Q_{k,s}.
Count count_frequent(const TransactionDataset& d, std::size_t k, Count s,
                     const MinerOptions& options = {});

// Number of k-itemsets at each exact support value >= floor, from one pass.
class SupportHistogram {
 public:
  SupportHistogram() = default;
  explicit SupportHistogram(Count floor) : floor_(floor) {}

  void add(Count support, Count times = 1);
  Count floor() const noexcept { return floor_; }
  Count max_support() const noexcept { return floor_ + (counts_.empty() ? 0 : counts_.size() - 1); }
  // Q_{k,s}; requires s >= floor().
  Count at_least(Count s) const;
  Count total() const { return at_least(floor_); }

 private:
  Count floor_ = 1;
  std::vector<Count> counts_;
};

SupportHistogram support_histogram(const TransactionDataset& d, std::size_t k, Count s,
                                   const MinerOptions& options = {});

inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

// Enumerates every C(n_referenced, k) candidate and counts containment directly.
MiningResult brute_force_mine(const TransactionDataset& d, std::size_t k, Count s);

Count support_of(const TransactionDataset& d, std::span<const Item> x);
inline Count support_of(const TransactionDataset& d, const Itemset& x) {
  return support_of(d, x.items());
}

// Header "k s q", then "i1 ... ik support" per itemset in lexicographic order.
void write_mining_result(std::ostream& out, const MiningResult& r);

// Saturating binomial coefficient.
std::uint64_t choose_saturating(std::uint64_t n, std::uint64_t k);

}  // namespace sigfim
