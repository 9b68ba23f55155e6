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

#include "sigfim/miner.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "sigfim/errors.hpp"

namespace sigfim {

Itemset::Itemset(std::vector<Item> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("itemset must have at least one item");
  for (std::size_t j = 1; j < items_.size(); ++j) {
    if (items_[j - 1] >= items_[j]) {
      throw std::invalid_argument("itemset items must be strictly increasing");
    }
  }
}

Itemset Itemset::canonical(std::vector<Item> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return Itemset(std::move(items));
}

MiningResult::MiningResult(std::size_t k, Count s, std::vector<Item> items,
                           std::vector<Count> supports)
    : k_(k), s_(s) {
  if (items.size() != supports.size() * k) {
    throw std::invalid_argument("itemset rows do not match support count");
  }
  std::vector<std::size_t> order(supports.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t j) { return items.begin() + static_cast<std::ptrdiff_t>(j * k); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(k), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(k));
  });
  items_.reserve(items.size());
  supports_.reserve(supports.size());
  for (std::size_t j : order) {
    items_.insert(items_.end(), row(j), row(j) + static_cast<std::ptrdiff_t>(k));
    supports_.push_back(supports[j]);
  }
}

std::optional<Count> MiningResult::find(std::span<const Item> x) const {
  if (x.size() != k_) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto row = itemset(mid);
    if (std::lexicographical_compare(row.begin(), row.end(), x.begin(), x.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal(itemset(lo), x)) return supports_[lo];
  return std::nullopt;
}

std::uint64_t choose_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ unsigned __int128 r = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t j = 1; j <= k; ++j) {
    r = r * (n - k + j) / j;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

// Transactions restricted to items that are frequent on their own, re-labelled
// densely so that dense order matches id order.
struct Projection {
  std::vector<Item> dense_to_item;
  std::vector<std::uint32_t> items;
  std::vector<std::size_t> offsets{0};

  std::size_t rows() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> row(std::size_t j) const {
    return {items.data() + offsets[j], offsets[j + 1] - offsets[j]};
  }
};

Projection project(const TransactionDataset& d, std::size_t k, Count s) {
  Projection p;
  std::vector<std::uint32_t> dense(d.universe(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < d.universe(); ++i) {
    if (d.item_support(static_cast<Item>(i)) >= s) {
      dense[i] = static_cast<std::uint32_t>(p.dense_to_item.size());
      p.dense_to_item.push_back(static_cast<Item>(i));
    }
  }
  if (p.dense_to_item.size() < k) return p;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const std::size_t start = p.items.size();
    for (Item i : d.transaction(j)) {
      if (dense[i] != std::numeric_limits<std::uint32_t>::max()) p.items.push_back(dense[i]);
    }
    if (p.items.size() - start < k) {
      p.items.resize(start);
    } else {
      p.offsets.push_back(p.items.size());
    }
  }
  return p;
}

class Emitter {
 public:
  Emitter(const Projection& p, std::size_t k, const ItemsetVisitor& visit)
      : p_(p), visit_(visit), buf_(k) {}

  void operator()(std::span<const std::uint32_t> dense, Count support) {
    for (std::size_t j = 0; j < dense.size(); ++j) buf_[j] = p_.dense_to_item[dense[j]];
    visit_(buf_, support);
  }

 private:
  const Projection& p_;
  const ItemsetVisitor& visit_;
  std::vector<Item> buf_;
};

void mine_pairs(const Projection& p, Count s, Emitter& emit) {
  const std::size_t f = p.dense_to_item.size();
  // Row a holds pairs (a, b) for b > a, starting at base[a].
  std::vector<std::size_t> base(f);
  std::size_t acc = 0;
  for (std::size_t a = 0; a < f; ++a) {
    base[a] = acc - (a + 1);
    acc += f - a - 1;
  }
  std::vector<std::uint32_t> counts(acc, 0);
  for (std::size_t j = 0; j < p.rows(); ++j) {
    const auto row = p.row(j);
    for (std::size_t x = 0; x < row.size(); ++x) {
      const std::size_t b0 = base[row[x]];
      for (std::size_t y = x + 1; y < row.size(); ++y) ++counts[b0 + row[y]];
    }
  }
  std::uint32_t pair[2];
  for (std::uint32_t a = 0; a < f; ++a) {
    for (std::uint32_t b = a + 1; b < f; ++b) {
      const Count c = counts[base[a] + b];
      if (c >= s) {
        pair[0] = a;
        pair[1] = b;
        emit(pair, c);
      }
    }
  }
}

void mine_combinations(const Projection& p, std::size_t k, Count s, std::uint64_t cap,
                       Emitter& emit) {
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(p.dense_to_item.size())));
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < p.rows(); ++j) {
    const auto row = p.row(j);
    const std::size_t len = row.size();
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      std::uint64_t key = 0;
      for (std::size_t x = 0; x < k; ++x) key = (key << bits) | row[idx[x]];
      ++counts[key];
      // Advance to the next k-combination of positions.
      std::size_t x = k;
      while (x > 0 && idx[x - 1] == len - k + (x - 1)) --x;
      if (x == 0) break;
      ++idx[x - 1];
      for (std::size_t y = x; y < k; ++y) idx[y] = idx[y - 1] + 1;
    }
    if (counts.size() > cap) throw CapacityError("live candidate count", cap);
  }
  std::vector<std::uint32_t> dense(k);
  const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
  for (const auto& [key, c] : counts) {
    if (c < s) continue;
    std::uint64_t v = key;
    for (std::size_t x = k; x-- > 0;) {
      dense[x] = static_cast<std::uint32_t>(v & mask);
      v >>= bits;
    }
    emit(dense, c);
  }
}

std::size_t intersect_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t n = 0;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

struct Node {
  std::uint32_t item;
  std::vector<std::uint32_t> tids;
};

class VerticalMiner {
 public:
  VerticalMiner(std::size_t k, Count s, Emitter& emit) : k_(k), s_(s), emit_(emit) {}

  void run(const Projection& p) {
    std::vector<Node> top(p.dense_to_item.size());
    for (std::uint32_t a = 0; a < top.size(); ++a) top[a].item = a;
    for (std::size_t j = 0; j < p.rows(); ++j) {
      for (std::uint32_t a : p.row(j)) top[a].tids.push_back(static_cast<std::uint32_t>(j));
    }
    extend(top);
  }

 private:
  void extend(const std::vector<Node>& cls) {
    for (std::size_t x = 0; x < cls.size(); ++x) {
      prefix_.push_back(cls[x].item);
      if (prefix_.size() + 1 == k_) {
        for (std::size_t y = x + 1; y < cls.size(); ++y) {
          const std::size_t c = intersect_count(cls[x].tids, cls[y].tids);
          if (c >= s_) {
            prefix_.push_back(cls[y].item);
            emit_(prefix_, c);
            prefix_.pop_back();
          }
        }
      } else {
        std::vector<Node> child;
        for (std::size_t y = x + 1; y < cls.size(); ++y) {
          Node n{cls[y].item, {}};
          std::set_intersection(cls[x].tids.begin(), cls[x].tids.end(), cls[y].tids.begin(),
                                cls[y].tids.end(), std::back_inserter(n.tids));
          if (n.tids.size() >= s_) child.push_back(std::move(n));
        }
        if (child.size() + prefix_.size() >= k_) extend(child);
      }
      prefix_.pop_back();
    }
  }

  std::size_t k_;
  Count s_;
  Emitter& emit_;
  std::vector<std::uint32_t> prefix_;
};

MiningStrategy choose_strategy(const Projection& p, std::size_t k, const MinerOptions& o) {
  const std::uint64_t f = p.dense_to_item.size();
  const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(f)));
  const bool packable = bits * k <= 64;
  if (o.strategy != MiningStrategy::automatic) {
    if (o.strategy == MiningStrategy::pair_array && k != 2) {
      throw std::invalid_argument("pair_array strategy requires k = 2");
    }
    if (o.strategy == MiningStrategy::combination_hash && !packable) {
      throw std::invalid_argument("itemsets too wide for combination hashing");
    }
    return o.strategy;
  }
  std::uint64_t combos = 0;
  for (std::size_t j = 0; j < p.rows(); ++j) {
    combos += choose_saturating(p.row(j).size(), k);
    if (combos > o.cap) break;
  }
  if (k == 2 && f * (f - 1) / 2 <= (std::uint64_t{1} << 25)) return MiningStrategy::pair_array;
  if (packable && combos <= o.cap && combos <= choose_saturating(f, k)) {
    return MiningStrategy::combination_hash;
  }
  return MiningStrategy::vertical;
}

}  // namespace

void for_each_frequent(const TransactionDataset& d, std::size_t k, Count s,
                       const MinerOptions& options, const ItemsetVisitor& visit) {
  if (k < 1) throw std::invalid_argument("itemset size k must be >= 1");
  if (s < 1) throw std::invalid_argument("support threshold s must be >= 1");
  if (k == 1) {
    Item one[1];
    for (std::size_t i = 0; i < d.universe(); ++i) {
      const Count c = d.item_support(static_cast<Item>(i));
      if (c >= s) {
        one[0] = static_cast<Item>(i);
        visit(one, c);
      }
    }
    return;
  }
  const Projection p = project(d, k, s);
  if (p.dense_to_item.size() < k || p.rows() == 0) return;
  Emitter emit(p, k, visit);
  switch (choose_strategy(p, k, options)) {
    case MiningStrategy::pair_array:
      mine_pairs(p, s, emit);
      break;
    case MiningStrategy::combination_hash:
      mine_combinations(p, k, s, options.cap, emit);
      break;
    case MiningStrategy::automatic:
    case MiningStrategy::vertical: {
      VerticalMiner m(k, s, emit);
      m.run(p);
      break;
    }
  }
}

MiningResult mine_fixed_size(const TransactionDataset& d, std::size_t k, Count s,
                             const MinerOptions& options) {
  std::vector<Item> items;
  std::vector<Count> supports;
  for_each_frequent(d, k, s, options, [&](std::span<const Item> x, Count c) {
    if (supports.size() >= options.cap) throw CapacityError("frequent itemset count", options.cap);
    items.insert(items.end(), x.begin(), x.end());
    supports.push_back(c);
  });
  return MiningResult(k, s, std::move(items), std::move(supports));
}

Count count_frequent(const TransactionDataset& d, std::size_t k, Count s,
                     const MinerOptions& options) {
  Count q = 0;
  for_each_frequent(d, k, s, options, [&](std::span<const Item>, Count) { ++q; });
  return q;
}

void SupportHistogram::add(Count support, Count times) {
  if (support < floor_) throw std::invalid_argument("support below histogram floor");
  const std::size_t at = support - floor_;
  if (at >= counts_.size()) counts_.resize(at + 1, 0);
  counts_[at] += times;
}

Count SupportHistogram::at_least(Count s) const {
  if (s < floor_) throw std::invalid_argument("histogram does not cover supports below its floor");
  Count q = 0;
  for (std::size_t at = s - floor_; at < counts_.size(); ++at) q += counts_[at];
  return q;
}

SupportHistogram support_histogram(const TransactionDataset& d, std::size_t k, Count s,
                                   const MinerOptions& options) {
  SupportHistogram h(s);
  for_each_frequent(d, k, s, options, [&](std::span<const Item>, Count c) { h.add(c); });
  return h;
}

Count support_of(const TransactionDataset& d, std::span<const Item> x) {
  Count c = 0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    const auto t = d.transaction(j);
    if (std::includes(t.begin(), t.end(), x.begin(), x.end())) ++c;
  }
  return c;
}

MiningResult brute_force_mine(const TransactionDataset& d, std::size_t k, Count s) {
  if (k < 1) throw std::invalid_argument("itemset size k must be >= 1");
  std::vector<Item> referenced;
  for (std::size_t i = 0; i < d.universe(); ++i) {
    if (d.item_support(static_cast<Item>(i)) > 0) referenced.push_back(static_cast<Item>(i));
  }
  if (choose_saturating(referenced.size(), k) > kBruteForceGuard) {
    throw CapacityError("brute-force candidate count", kBruteForceGuard);
  }
  std::vector<Item> items;
  std::vector<Count> supports;
  if (referenced.size() < k) return MiningResult(k, s);
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<Item> x(k);
  const std::size_t n = referenced.size();
  while (true) {
    for (std::size_t j = 0; j < k; ++j) x[j] = referenced[idx[j]];
    const Count c = support_of(d, x);
    if (c >= s) {
      items.insert(items.end(), x.begin(), x.end());
      supports.push_back(c);
    }
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t y = j; y < k; ++y) idx[y] = idx[y - 1] + 1;
  }
  return MiningResult(k, s, std::move(items), std::move(supports));
}

void write_mining_result(std::ostream& out, const MiningResult& r) {
  out << r.k() << ' ' << r.threshold() << ' ' << r.size() << '\n';
  for (std::size_t j = 0; j < r.size(); ++j) {
    for (Item i : r.itemset(j)) out << i << ' ';
    out << r.support(j) << '\n';
  }
}

}  // namespace sigfim
