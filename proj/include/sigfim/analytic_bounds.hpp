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

#include <cstdint>

namespace sigfim {

// Finite-n Chen-Stein quantities for the model where item x appears in each
// transaction with probability R_x. Values are also returned as logs since
// they routinely leave the double range.
struct AnalyticBounds {
  double b1 = 0.0;
  double b2 = 0.0;
  double log_b1 = 0.0;
  double log_b2 = 0.0;
};

// R_x = gamma / n for every item. b1 is exact (diagonal X = Y included);
// b2 is the union bound over shared / private transaction blocks:
//   b1 = (C(n,k)^2 - C(n,k) C(n-k,k)) * Pr(Bin(t, p^k) >= s)^2
//   b2 <= sum_{g=1}^{k-1} C(n; g, k-g, k-g) sum_{i=0}^{s} C(t; i, s-i, s-i) p^{(2k-g) i + 2k (s-i)}
// with C(m; x, y, z) = C(m, x) C(m-x, y) C(m-x-y, z).
AnalyticBounds analytic_bounds_uniform(std::uint64_t n, std::uint64_t k, std::uint64_t s,
                                       std::uint64_t t, double gamma);

// R_x drawn i.i.d. with E[R^{2s}] = moment_2s (Jensen-based bounds):
//   b1 <= C(n,k)^2 (1 - prod_{i<k} (n-k-i)/(n-i)) C(t,s)^2 moment^k
//   b2 <= sum_{g=1}^{k-1} C(n; g, k-g, k-g) sum_{i=0}^{s} C(t; i, s-i, s-i) moment^{k - i g / (2s)}
AnalyticBounds analytic_bounds_moment(std::uint64_t n, std::uint64_t k, std::uint64_t s,
                                      std::uint64_t t, double moment_2s);

}  // namespace sigfim
