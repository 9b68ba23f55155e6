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

#include "sigfim/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sigfim/errors.hpp"

namespace sigfim {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

TransactionDataset TransactionDataset::from_transactions(std::vector<std::vector<Item>> transactions,
                                                         std::optional<std::size_t> universe) {
  TransactionDataset d;
  d.offsets_.clear();
  d.offsets_.reserve(transactions.size() + 1);
  d.offsets_.push_back(0);
  std::size_t total = 0;
  for (const auto& t : transactions) total += t.size();
  d.items_.reserve(total);
  for (auto& t : transactions) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    d.items_.insert(d.items_.end(), t.begin(), t.end());
    d.offsets_.push_back(d.items_.size());
  }
  Item max_id = 0;
  for (Item i : d.items_) max_id = std::max(max_id, i);
  const std::size_t referenced = d.items_.empty() ? 0 : static_cast<std::size_t>(max_id) + 1;
  if (universe) {
    if (*universe < referenced) {
      throw std::invalid_argument("declared universe " + std::to_string(*universe) +
                                  " does not cover item id " + std::to_string(max_id));
    }
    d.universe_ = *universe;
    d.universe_declared_ = true;
  } else {
    d.universe_ = referenced;
  }
  d.finish();
  return d;
}

TransactionDataset TransactionDataset::from_rows(std::vector<Item> items,
                                                 std::vector<std::size_t> offsets,
                                                 std::size_t universe, bool universe_declared) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != items.size()) {
    throw std::invalid_argument("row offsets do not describe the item array");
  }
  for (std::size_t j = 0; j + 1 < offsets.size(); ++j) {
    if (offsets[j] > offsets[j + 1]) throw std::invalid_argument("row offsets must be ascending");
    for (std::size_t p = offsets[j]; p < offsets[j + 1]; ++p) {
      if (items[p] >= universe) throw std::invalid_argument("item id outside universe");
      if (p > offsets[j] && items[p - 1] >= items[p]) {
        throw std::invalid_argument("transaction items must be strictly increasing");
      }
    }
  }
  TransactionDataset d;
  d.items_ = std::move(items);
  d.offsets_ = std::move(offsets);
  d.universe_ = universe;
  d.universe_declared_ = universe_declared;
  d.finish();
  return d;
}

void TransactionDataset::finish() {
  support_.assign(universe_, 0);
  for (Item i : items_) ++support_[i];
  distinct_ = static_cast<std::size_t>(
      std::count_if(support_.begin(), support_.end(), [](Count c) { return c > 0; }));
}

std::size_t TransactionDataset::max_length() const noexcept {
  std::size_t best = 0;
  for (std::size_t j = 0; j < size(); ++j) best = std::max(best, offsets_[j + 1] - offsets_[j]);
  return best;
}

TransactionDataset parse_fimi(std::istream& in, std::optional<std::size_t> universe) {
  std::vector<std::vector<Item>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::vector<Item> row;
  while (std::getline(in, line)) {
    ++line_no;
    row.clear();
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && is_space(*p)) ++p;
      if (p == end) break;
      const char* tok = p;
      while (p < end && !is_space(*p)) ++p;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(tok, p, value);
      if (ec != std::errc() || ptr != p) {
        throw ParseError(line_no, "malformed item token '" + std::string(tok, p) + "'");
      }
      if (value >= std::numeric_limits<Item>::max()) {
        throw ParseError(line_no, "item id " + std::string(tok, p) + " out of range");
      }
      row.push_back(static_cast<Item>(value));
    }
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw ParseError(0, "dataset has no transactions");
  return TransactionDataset::from_transactions(std::move(rows), universe);
}

TransactionDataset parse_fimi(const std::string& text, std::optional<std::size_t> universe) {
  std::istringstream in(text);
  return parse_fimi(in, universe);
}

TransactionDataset load_fimi(const std::string& path, std::optional<std::size_t> universe) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open dataset file " + path);
  return parse_fimi(in, universe);
}

void write_fimi(std::ostream& out, const TransactionDataset& d) {
  std::string buf;
  char num[16];
  for (std::size_t j = 0; j < d.size(); ++j) {
    buf.clear();
    bool first = true;
    for (Item i : d.transaction(j)) {
      if (!first) buf.push_back(' ');
      first = false;
      auto [ptr, ec] = std::to_chars(num, num + sizeof num, i);
      buf.append(num, ptr);
    }
    buf.push_back('\n');
    out << buf;
  }
}

std::string to_fimi(const TransactionDataset& d) {
  std::ostringstream out;
  write_fimi(out, d);
  return out.str();
}

FrequencyVector item_frequencies(const TransactionDataset& d) {
  if (d.size() == 0) throw std::invalid_argument("frequencies need at least one transaction");
  FrequencyVector fv;
  fv.f.resize(d.universe());
  const double t = static_cast<double>(d.size());
  for (std::size_t i = 0; i < fv.f.size(); ++i) {
    fv.f[i] = static_cast<double>(d.item_support(static_cast<Item>(i))) / t;
  }
  return fv;
}

Count max_item_support(const TransactionDataset& d) {
  if (d.size() == 0) throw std::invalid_argument("max item support needs at least one transaction");
  const auto s = d.item_supports();
  return s.empty() ? 0 : *std::max_element(s.begin(), s.end());
}

}  // namespace sigfim
