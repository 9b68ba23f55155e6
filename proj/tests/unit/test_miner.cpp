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

#include <random>
#include <sstream>

#include "doctest.h"
#include "sigfim/errors.hpp"
#include "sigfim/miner.hpp"

using namespace sigfim;

namespace {

TransactionDataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t t, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<Item>> rows(t);
  for (auto& row : rows)
    for (Item i = 0; i < n; ++i)
      if (coin(rng)) row.push_back(i);
  return TransactionDataset::from_transactions(std::move(rows), n);
}

constexpr MiningStrategy kStrategies[] = {MiningStrategy::automatic, MiningStrategy::pair_array,
                                          MiningStrategy::combination_hash, MiningStrategy::vertical};

}  // namespace

TEST_CASE("Itemset keeps canonical form") {
  CHECK(Itemset::canonical({3, 1, 3, 2}) == Itemset{1, 2, 3});
  CHECK_THROWS(Itemset({2, 1}));
  CHECK_THROWS(Itemset({1, 1}));
  CHECK(Itemset{1, 2} < Itemset{1, 3});
}

TEST_CASE("hand example") {
  const auto d = parse_fimi(std::string("1 2 3\n1 2\n2 3\n1 2 3 4\n"));
  const auto r = mine_fixed_size(d, 2, 2);
  REQUIRE(r.size() == 3);
  CHECK(r.find(std::vector<Item>{1, 2}) == Count{3});
  CHECK(r.find(std::vector<Item>{2, 3}) == Count{3});
  CHECK(r.find(std::vector<Item>{1, 3}) == Count{2});
  CHECK_FALSE(r.find(std::vector<Item>{3, 4}).has_value());
  CHECK(count_frequent(d, 3, 2) == 1);
  CHECK(support_of(d, Itemset{1, 2, 3}) == 2);
  CHECK(mine_fixed_size(d, 5, 1).empty());

  std::ostringstream out;
  write_mining_result(out, mine_fixed_size(d, 3, 2));
  CHECK(out.str() == "3 2 1\n1 2 3 2\n");
}

TEST_CASE("every strategy matches brute force on random instances") {
  std::mt19937_64 rng(20261014);
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 2 + rng() % 11;
    const std::size_t t = 1 + rng() % 40;
    const double density = 0.15 + 0.6 * std::uniform_real_distribution<double>()(rng);
    const auto d = random_dataset(rng, n, t, density);
    for (std::size_t k = 1; k <= 4; ++k) {
      const Count s = 1 + rng() % std::max<std::size_t>(1, t / 2);
      const auto truth = brute_force_mine(d, k, s);
      for (auto strategy : kStrategies) {
        if (strategy == MiningStrategy::pair_array && k != 2) continue;
        MinerOptions o;
        o.strategy = strategy;
        CAPTURE(rep);
        CAPTURE(k);
        CAPTURE(static_cast<int>(strategy));
        CHECK(mine_fixed_size(d, k, s, o) == truth);
        CHECK(count_frequent(d, k, s, o) == truth.size());
      }
    }
  }
}

TEST_CASE("monotone in s and histogram agrees with mining") {
  std::mt19937_64 rng(7);
  const auto d = random_dataset(rng, 14, 60, 0.35);
  for (std::size_t k = 2; k <= 3; ++k) {
    const auto h = support_histogram(d, k, 2);
    Count prev = h.at_least(2);
    CHECK(h.total() == prev);
    for (Count s = 2; s <= 61; ++s) {
      const Count q = count_frequent(d, k, s);
      CHECK(q == h.at_least(s));
      CHECK(q <= prev);
      prev = q;
      // Every superset of a frequent itemset drawn here has smaller support.
      for (std::size_t j = 0; j < mine_fixed_size(d, k, s).size(); ++j) {
        CHECK(mine_fixed_size(d, k, s).support(j) >= s);
      }
    }
    CHECK(h.at_least(h.max_support() + 1) == 0);
  }
}

TEST_CASE("anti-monotone support") {
  std::mt19937_64 rng(11);
  const auto d = random_dataset(rng, 10, 50, 0.5);
  const auto pairs = mine_fixed_size(d, 2, 1);
  const auto triples = mine_fixed_size(d, 3, 1);
  for (std::size_t j = 0; j < triples.size(); ++j) {
    const auto x = triples.itemset(j);
    for (std::size_t drop = 0; drop < 3; ++drop) {
      std::vector<Item> sub;
      for (std::size_t q = 0; q < 3; ++q)
        if (q != drop) sub.push_back(x[q]);
      const auto sup = pairs.find(sub);
      REQUIRE(sup.has_value());
      CHECK(*sup >= triples.support(j));
    }
  }
}

TEST_CASE("capacity errors") {
  std::mt19937_64 rng(3);
  const auto d = random_dataset(rng, 30, 20, 0.9);
  MinerOptions o;
  o.cap = 10;
  CHECK_THROWS_AS(mine_fixed_size(d, 2, 1, o), CapacityError);
  o.strategy = MiningStrategy::combination_hash;
  CHECK_THROWS_AS(count_frequent(d, 3, 1, o), CapacityError);
  o.cap = 1'000'000;
  CHECK_NOTHROW(count_frequent(d, 3, 1, o));
}

TEST_CASE("choose_saturating") {
  CHECK(choose_saturating(5, 2) == 10);
  CHECK(choose_saturating(497, 3) == 20'337'240);
  CHECK(choose_saturating(3, 5) == 0);
  CHECK(choose_saturating(1000, 500) == UINT64_MAX);
}
