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
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "sigfim/dataset.hpp"

namespace sigfim::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kParseError = 3,
  kCapExceeded = 4,
  kPoissonNotReached = 5,
};

struct RunConfig {
  std::string dataset_path;
  std::size_t k = 2;
  double epsilon = 0.01;
  double alpha = 0.05;
  double beta = 0.05;
  std::size_t trials = 1000;
  // Overrides `trials` through required_trials(epsilon, delta).
  std::optional<double> delta;
  std::uint64_t seed = 0;
  std::optional<std::size_t> universe;
  std::uint64_t cap = 50'000'000;
  std::string output_path;
  unsigned threads = 0;

  // Skips the Monte Carlo search and uses this s_min directly.
  std::optional<Count> s_min;
  // A find-smin report whose s_min_hat and lambda estimate are reused.
  std::string ensemble_path;
  // Leave itemset lists out of the procedure reports.
  bool summary_only = false;

  // Synthetic model for `generate` when no dataset is given.
  std::size_t transactions = 0;
  std::size_t items = 0;
  double frequency = 0.0;

  std::size_t effective_trials() const;
};

// Each command returns its JSON report and writes a readable table to `log`.
nlohmann::json cmd_stats(const RunConfig& c, std::ostream& log);
nlohmann::json cmd_find_smin(const RunConfig& c, std::ostream& log);
nlohmann::json cmd_procedure1(const RunConfig& c, std::ostream& log);
nlohmann::json cmd_procedure2(const RunConfig& c, std::ostream& log);
// Writes a FIMI dataset to `data` and returns a short summary.
nlohmann::json cmd_generate(const RunConfig& c, std::ostream& data, std::ostream& log);

// Full argument parsing and dispatch; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sigfim::cli
