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

#include "sigfim/log_prob.hpp"

namespace sigfim {

// Tail and point probabilities of the Binomial and Poisson null laws. Point
// masses use Loader's saddle-point form, so each term carries relative error
// near machine precision even when it is far below the double range.
namespace stats {

// log Pr(Binomial(t, p) = x).
double log_binomial_pmf(std::uint64_t t, double p, std::uint64_t x);
// log Pr(Poisson(lambda) = x).
double log_poisson_pmf(double lambda, std::uint64_t x);

// Pr(Binomial(t, p) >= s).
LogProb binomial_tail(std::uint64_t t, double p, std::uint64_t s);
// Pr(Binomial(t, p) <= x).
LogProb binomial_cdf(std::uint64_t t, double p, std::uint64_t x);

// Pr(Poisson(lambda) >= q).
LogProb poisson_tail(double lambda, std::uint64_t q);
// Pr(Poisson(lambda) <= x).
LogProb poisson_cdf(double lambda, std::uint64_t x);

// C(n_items, 2) * Pr(Binomial(t, f^2) >= s): pairs expected to reach support s
// among n_items independent items of common frequency f.
double expected_pairs_example(std::uint64_t n_items, std::uint64_t t, double f, std::uint64_t s);

// log C(n, k) via lgamma; adequate where ~1e-13 relative accuracy is enough.
double log_choose(double n, double k);

}  // namespace stats
}  // namespace sigfim
