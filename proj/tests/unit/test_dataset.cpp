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

#include <sstream>

#include "doctest.h"
#include "sigfim/dataset.hpp"
#include "sigfim/errors.hpp"

using namespace sigfim;

TEST_CASE("parse_fimi reads rows and collapses duplicates") {
  const auto d = parse_fimi(std::string("3 1 2\n\n5 5 0\n   \n7\n"));
  CHECK(d.size() == 3);
  CHECK(d.universe() == 8);
  CHECK_FALSE(d.universe_declared());
  CHECK(d.distinct_items() == 6);
  CHECK(d.hypothesis_items() == 6);
  CHECK(std::vector<Item>(d.transaction(0).begin(), d.transaction(0).end()) == std::vector<Item>{1, 2, 3});
  CHECK(std::vector<Item>(d.transaction(1).begin(), d.transaction(1).end()) == std::vector<Item>{0, 5});
  CHECK(d.item_support(5) == 1);
  CHECK(d.item_support(4) == 0);
  CHECK(d.item_support(1000) == 0);
  CHECK(d.total_items() == 6);
  CHECK(d.average_length() == doctest::Approx(2.0));
  CHECK(d.max_length() == 3);
}

TEST_CASE("toy file statistics by hand") {
  const auto d = parse_fimi(std::string("1 2\n2 3 4\n"));
  CHECK(d.size() == 2);
  CHECK(d.distinct_items() == 4);
  CHECK(d.average_length() == doctest::Approx(2.5));
  const auto f = item_frequencies(d);
  CHECK(f[2] == doctest::Approx(1.0));
  CHECK(f[1] == doctest::Approx(0.5));
  CHECK(f[0] == 0.0);
  CHECK(max_item_support(d) == 2);
}

TEST_CASE("declared universe") {
  const auto d = parse_fimi(std::string("0 1\n"), 10);
  CHECK(d.universe() == 10);
  CHECK(d.universe_declared());
  CHECK(d.hypothesis_items() == 10);
  CHECK(item_frequencies(d).size() == 10);
  CHECK_THROWS_AS(parse_fimi(std::string("0 12\n"), 10), std::invalid_argument);
}

TEST_CASE("parse errors carry the line number") {
  try {
    (void)parse_fimi(std::string("1 2\n3 x 4\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_fimi(std::string("1 -2\n")), ParseError);
  CHECK_THROWS_AS(parse_fimi(std::string("1 2.5\n")), ParseError);
  CHECK_THROWS_AS(parse_fimi(std::string("99999999999999999999\n")), ParseError);
  CHECK_THROWS_AS(parse_fimi(std::string("")), ParseError);
  CHECK_THROWS_AS(parse_fimi(std::string("\n\n  \n")), ParseError);
}

TEST_CASE("windows line endings and tabs") {
  const auto d = parse_fimi(std::string("1\t2\r\n3\r\n"));
  CHECK(d.size() == 2);
  CHECK(d.item_support(3) == 1);
}

TEST_CASE("write and parse round trip") {
  const auto d = TransactionDataset::from_transactions({{4, 1, 1}, {0}, {2, 3, 9, 7}});
  const std::string text = to_fimi(d);
  CHECK(text == "1 4\n0\n2 3 7 9\n");
  CHECK(parse_fimi(text) == d);
}

TEST_CASE("from_rows validates its input") {
  CHECK_NOTHROW(TransactionDataset::from_rows({1, 2, 0}, {0, 2, 3}, 3, false));
  CHECK_THROWS(TransactionDataset::from_rows({2, 1}, {0, 2}, 3, false));
  CHECK_THROWS(TransactionDataset::from_rows({1, 5}, {0, 2}, 3, false));
  CHECK_THROWS(TransactionDataset::from_rows({1, 2}, {0, 3}, 3, false));
}

TEST_CASE("frequencies need transactions") {
  const TransactionDataset empty;
  CHECK(empty.size() == 0);
  CHECK_THROWS(item_frequencies(empty));
  CHECK_THROWS(max_item_support(empty));
}
