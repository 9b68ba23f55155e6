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

#include <cmath>
#include <compare>
#include <limits>

namespace sigfim {

// A probability held as its natural log; probability 0 is -infinity.
class LogProb {
 public:
  constexpr LogProb() = default;

  static LogProb from_log(double log_value) {
    LogProb p;
    p.log_ = log_value > 0.0 ? 0.0 : log_value;
    return p;
  }
  static LogProb from_prob(double prob) {
    return from_log(prob <= 0.0 ? -std::numeric_limits<double>::infinity() : std::log(prob));
  }
  static constexpr LogProb zero() {
    LogProb p;
    p.log_ = -std::numeric_limits<double>::infinity();
    return p;
  }
  static constexpr LogProb one() { return LogProb{}; }

  constexpr double log() const noexcept { return log_; }
  double prob() const noexcept { return std::exp(log_); }
  constexpr bool is_zero() const noexcept { return log_ == -std::numeric_limits<double>::infinity(); }

  constexpr auto operator<=>(const LogProb&) const = default;

 private:
  double log_ = 0.0;
};

}  // namespace sigfim
