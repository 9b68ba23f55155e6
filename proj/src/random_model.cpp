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

#include "sigfim/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "sigfim/philox.hpp"

namespace sigfim {

RandomModel::RandomModel(std::vector<double> frequencies, std::size_t transactions)
    : f_(std::move(frequencies)), t_(transactions) {
  if (t_ < 1) throw std::invalid_argument("random model needs t >= 1");
  if (f_.size() >= std::numeric_limits<Item>::max()) {
    throw std::invalid_argument("item universe too large");
  }
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (!(f_[i] >= 0.0 && f_[i] <= 1.0)) {
      throw std::invalid_argument("frequency of item " + std::to_string(i) + " outside [0, 1]");
    }
    if (f_[i] > 0.0) active_.push_back(static_cast<Item>(i));
  }
}

RandomModel RandomModel::uniform(std::size_t items, std::size_t transactions, double f) {
  return RandomModel(std::vector<double>(items, f), transactions);
}

RandomModel model_from_dataset(const TransactionDataset& d) {
  return RandomModel(item_frequencies(d).f, d.size());
}

TransactionDataset generate(const RandomModel& m, Seed seed, std::uint64_t stream) {
  const std::size_t t = m.transactions();
  // Vertical pass: per-item transaction positions, items ascending.
  std::vector<std::uint32_t> positions;
  std::vector<std::size_t> item_begin;
  std::vector<Item> items_used;
  std::vector<std::size_t> row_len(t, 0);
  for (Item i : m.active_items()) {
    const double f = m.frequency(i);
    item_begin.push_back(positions.size());
    items_used.push_back(i);
    if (f >= 1.0) {
      for (std::size_t j = 0; j < t; ++j) positions.push_back(static_cast<std::uint32_t>(j));
    } else {
      PhiloxStream rng(seed.value, stream, i);
      const double log_miss = std::log1p(-f);
      const double limit = static_cast<double>(t);
      double pos = -1.0;
      while (true) {
        // Failures before the next inclusion are Geometric(f).
        const double skip = std::floor(std::log(rng.next_open_unit()) / log_miss);
        pos += skip + 1.0;
        if (!(pos < limit)) break;
        positions.push_back(static_cast<std::uint32_t>(pos));
      }
    }
    for (std::size_t p = item_begin.back(); p < positions.size(); ++p) ++row_len[positions[p]];
  }
  item_begin.push_back(positions.size());

  std::vector<std::size_t> offsets(t + 1, 0);
  for (std::size_t j = 0; j < t; ++j) offsets[j + 1] = offsets[j] + row_len[j];
  std::vector<Item> rows(positions.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t x = 0; x < items_used.size(); ++x) {
    for (std::size_t p = item_begin[x]; p < item_begin[x + 1]; ++p) {
      rows[fill[positions[p]]++] = items_used[x];
    }
  }
  return TransactionDataset::from_rows(std::move(rows), std::move(offsets), m.universe(), false);
}

double expected_support(const RandomModel& m, std::span<const Item> x) {
  double e = static_cast<double>(m.transactions());
  for (Item i : x) {
    if (i >= m.universe()) throw std::invalid_argument("item id outside model universe");
    e *= m.frequency(i);
  }
  return e;
}

double max_expected_support(const RandomModel& m, std::size_t k) {
  if (k > m.universe()) throw std::invalid_argument("k exceeds the model's item universe");
  std::vector<double> f(m.frequencies().begin(), m.frequencies().end());
  std::partial_sort(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k), f.end(),
                    std::greater<>());
  double e = static_cast<double>(m.transactions());
  for (std::size_t j = 0; j < k; ++j) e *= f[j];
  return e;
}

}  // namespace sigfim
