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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigfim {

using Item = std::uint32_t;
using Count = std::uint64_t;

// Immutable bag of transactions stored in compressed-row form. Every
// transaction is a strictly increasing run of item ids.
class TransactionDataset {
 public:
  TransactionDataset() = default;

  // Takes raw transactions; each one is sorted and de-duplicated. When
  // `universe` is given it must exceed every referenced id.
  static TransactionDataset from_transactions(std::vector<std::vector<Item>> transactions,
                                              std::optional<std::size_t> universe = std::nullopt);

  // Adopts compressed rows that are already canonical. offsets has size t + 1.
  static TransactionDataset from_rows(std::vector<Item> items, std::vector<std::size_t> offsets,
                                      std::size_t universe, bool universe_declared);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const Item> transaction(std::size_t j) const noexcept {
    return {items_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }

  // Item universe n: the declared size, else max referenced id + 1.
  std::size_t universe() const noexcept { return universe_; }
  bool universe_declared() const noexcept { return universe_declared_; }
  // Number of ids with n(i) >= 1.
  std::size_t distinct_items() const noexcept { return distinct_; }
  // Item count used as n when forming C(n, k) hypotheses: the declared universe
  // when one was given, else the referenced items.
  std::size_t hypothesis_items() const noexcept {
    return universe_declared_ ? universe_ : distinct_;
  }

  Count item_support(Item i) const noexcept { return i < support_.size() ? support_[i] : 0; }
  std::span<const Count> item_supports() const noexcept { return support_; }
  std::size_t total_items() const noexcept { return items_.size(); }
  double average_length() const noexcept {
    return size() == 0 ? 0.0 : static_cast<double>(items_.size()) / static_cast<double>(size());
  }
  std::size_t max_length() const noexcept;

  bool operator==(const TransactionDataset&) const = default;

 private:
  void finish();

  std::vector<Item> items_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Count> support_;
  std::size_t universe_ = 0;
  std::size_t distinct_ = 0;
  bool universe_declared_ = false;
};

// FIMI flat format: one transaction per nonempty line, whitespace separated
// non-negative ids. Blank lines are skipped; duplicates within a line collapse.
TransactionDataset parse_fimi(std::istream& in, std::optional<std::size_t> universe = std::nullopt);
TransactionDataset parse_fimi(const std::string& text,
                              std::optional<std::size_t> universe = std::nullopt);
TransactionDataset load_fimi(const std::string& path,
                             std::optional<std::size_t> universe = std::nullopt);

// Ascending ids, single spaces, one newline-terminated line per transaction.
void write_fimi(std::ostream& out, const TransactionDataset& d);
std::string to_fimi(const TransactionDataset& d);

// f_i = n(i) / t, indexed by item id over the universe.
struct FrequencyVector {
  std::vector<double> f;

  std::size_t size() const noexcept { return f.size(); }
  double operator[](Item i) const noexcept { return i < f.size() ? f[i] : 0.0; }
};

FrequencyVector item_frequencies(const TransactionDataset& d);
Count max_item_support(const TransactionDataset& d);

}  // namespace sigfim
