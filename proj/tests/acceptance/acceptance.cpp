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

// Acceptance suite. Run without arguments for every criterion, or with
// `--criterion N` for one. Prints one PASS/FAIL line per criterion and exits
// nonzero if any failed.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sigfim/chen_stein.hpp"
#include "sigfim/miner.hpp"
#include "sigfim/procedures.hpp"
#include "sigfim/random_model.hpp"
#include "sigfim/stats.hpp"
#include "tail_oracle.hpp"
#include "tiny_model.hpp"

using namespace sigfim;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  // Zero means no runtime bound.
  double max_seconds;
  std::function<Verdict()> run;
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// ---- data files ---------------------------------------------------------

fs::path data_dir() {
  if (const char* env = std::getenv("SIGFIM_DATA_DIR"); env && *env) return env;
  return SIGFIM_DATA_DIR;
}

std::optional<fs::path> find_benchmark(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    const fs::path p = data_dir() / n;
    if (fs::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

const std::vector<std::string> kBms1Names{"bms1.dat", "BMS1.dat", "BMS-WebView-1.dat", "bms-webview-1.dat"};
const std::vector<std::string> kBms2Names{"bms2.dat", "BMS2.dat", "BMS-WebView-2.dat", "bms-webview-2.dat"};

std::string missing(const char* name) {
  return std::string(name) + " not found under " + data_dir().string() +
         " (set SIGFIM_DATA_DIR to a directory holding the FIMI file)";
}

// ---- 1 ------------------------------------------------------------------

Verdict miner_oracle() {
  std::mt19937_64 rng(1);
  int mismatches = 0, total_itemsets = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t t = 1 + rng() % 40;
    const double density = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<Item>> rows(t);
    for (auto& row : rows)
      for (Item i = 0; i < n; ++i)
        if (coin(rng)) row.push_back(i);
    const auto d = TransactionDataset::from_transactions(std::move(rows), n);
    const std::size_t k = 2 + rng() % 3;
    const Count s = 1 + rng() % t;
    const auto want = brute_force_mine(d, k, s);
    total_itemsets += static_cast<int>(want.size());
    if (!(mine_fixed_size(d, k, s) == want)) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches over 200 instances, " +
                               std::to_string(total_itemsets) + " itemsets compared"};
}

// ---- 2 ------------------------------------------------------------------

Verdict tail_kernels() {
  double worst = 0.0;
  std::string worst_at;
  int points = 0;
  auto score = [&](LogProb got, const oracle::Real& want, const std::string& where) {
    const double log_want = static_cast<double>(boost::multiprecision::log(want));
    const double err = std::abs(std::expm1(got.log() - log_want));
    ++points;
    if (!(err <= worst)) {
      worst = err;
      worst_at = where;
    }
  };
  // 350 binomial points: 7 sizes x 10 probabilities x 5 offsets from the mean.
  const std::uint64_t ts[] = {10, 97, 1000, 10000, 100000, 500000, 1000000};
  const double ps[] = {1e-9, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 0.01, 0.1, 0.5, 0.9};
  const double zs[] = {-4.0, -0.7, 0.6, 3.0, 15.0};
  for (std::uint64_t t : ts)
    for (double p : ps)
      for (double z : zs) {
        const double mean = static_cast<double>(t) * p;
        const double sd = std::max(1.0, std::sqrt(mean * (1 - p)));
        const double raw = std::ceil(mean + z * sd);
        const auto s = static_cast<std::uint64_t>(std::clamp(raw, 1.0, static_cast<double>(t)));
        score(stats::binomial_tail(t, p, s), oracle::binomial_tail(t, p, s),
              "binomial t=" + std::to_string(t) + " p=" + fmt(p) + " s=" + std::to_string(s));
      }
  // 150 Poisson points: 25 means log-spaced on [1e-6, 1e4] x 6 offsets.
  const double pz[] = {-5.0, -1.0, 0.2, 1.5, 6.0, 25.0};
  for (int j = 0; j < 25; ++j) {
    const double lambda = std::pow(10.0, -6.0 + 10.0 * j / 24.0);
    for (double z : pz) {
      const double raw = std::ceil(lambda + z * std::max(1.0, std::sqrt(lambda)));
      const auto q = static_cast<std::uint64_t>(std::max(1.0, raw));
      score(stats::poisson_tail(lambda, q), oracle::poisson_tail(lambda, q),
            "poisson lambda=" + fmt(lambda) + " q=" + std::to_string(q));
    }
  }
  return {points == 500 && worst <= 1e-12,
          std::to_string(points) + " points, max relative error " + fmt(worst, 3) + " at " + worst_at};
}

// ---- 3 ------------------------------------------------------------------

Verdict worked_example() {
  const double tail = stats::binomial_tail(1'000'000, 1e-6, 7).prob();
  const double pairs = stats::expected_pairs_example(1000, 1'000'000, 1e-3, 7);
  const bool ok = tail >= 8.30e-5 && tail <= 8.35e-5 && pairs >= 41 && pairs <= 42 &&
                  std::abs(tail / 8.3239871935090e-5 - 1) <= 1e-12;
  return {ok, "Pr(Bin(1e6,1e-6) >= 7) = " + fmt(tail, 8) + ", expected pairs = " + fmt(pairs, 8)};
}

// ---- 4 ------------------------------------------------------------------

Verdict published_smin() {
  struct Row {
    const char* name;
    const std::vector<std::string>* files;
    std::size_t k;
    double published;
  };
  const Row rows[] = {{"Bms1", &kBms1Names, 2, 268}, {"Bms1", &kBms1Names, 3, 23},
                      {"Bms2", &kBms2Names, 2, 168}, {"Bms2", &kBms2Names, 3, 13}};
  std::string detail;
  bool ok = true;
  for (const auto& r : rows) {
    const auto path = find_benchmark(*r.files);
    if (!path) return {false, missing(r.name)};
    const auto d = load_fimi(path->string());
    const auto m = model_from_dataset(d);
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      sum += static_cast<double>(find_poisson_threshold(m, r.k, 1000, 0.01, Seed{seed}).s_min_hat);
    }
    const double mean = sum / 3;
    const bool row_ok = std::abs(mean - r.published) <= 0.1 * r.published;
    ok = ok && row_ok;
    detail += std::string(r.name) + " k=" + std::to_string(r.k) + ": " + fmt(mean, 5) + " vs " +
              fmt(r.published) + (row_ok ? "; " : " (off); ");
  }
  return {ok, detail};
}

// ---- 5 ------------------------------------------------------------------

Verdict published_threshold() {
  const auto p1 = find_benchmark(kBms1Names);
  if (!p1) return {false, missing("Bms1")};
  const auto p2 = find_benchmark(kBms2Names);
  if (!p2) return {false, missing("Bms2")};
  const auto bms1 = load_fimi(p1->string());
  const auto bms2 = load_fimi(p2->string());
  const Count q1 = count_frequent(bms1, 2, 276);
  const Count q2 = count_frequent(bms2, 2, 168);

  const auto m = model_from_dataset(bms1);
  MonteCarloEnsemble e(m, 2, 1000, Seed{1});
  const auto found = find_poisson_threshold(e, 0.01);
  std::vector<Count> grid;
  for (Count s = found.s_min_hat; s <= e.max_observed_support() + 1; ++s) grid.push_back(s);
  const auto r = procedure2(bms1, m, 2, 0.05, 0.05, found.s_min_hat, e.lambda(grid));
  const bool s_ok = r.s_star && *r.s_star >= 260 && *r.s_star <= 292;
  return {s_ok && q1 == 56 && q2 == 429,
          "Bms1 s* = " + (r.s_star ? std::to_string(*r.s_star) : std::string("inf")) +
              " (s_min_hat " + std::to_string(found.s_min_hat) + "), Q(2,276) = " + std::to_string(q1) +
              "; Bms2 Q(2,168) = " + std::to_string(q2)};
}

// ---- 6 ------------------------------------------------------------------

Verdict null_robustness() {
  const auto path = find_benchmark(kBms2Names);
  if (!path) return {false, missing("Bms2")};
  const auto m = model_from_dataset(load_fimi(path->string()));
  std::string detail;
  bool ok = true;
  for (std::size_t k : {2, 3}) {
    MonteCarloEnsemble e(m, k, 1000, Seed{k});
    const auto found = find_poisson_threshold(e, 0.01);
    std::vector<Count> grid;
    for (Count s = found.s_min_hat; s <= e.max_observed_support() + 1; ++s) grid.push_back(s);
    const auto lambda = e.lambda(grid);
    int infinite = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
      const auto d = generate(m, Seed{900 + k}, r);
      if (!procedure2(d, m, k, 0.05, 0.05, found.s_min_hat, lambda).s_star) ++infinite;
    }
    ok = ok && infinite >= 19;
    detail += "k=" + std::to_string(k) + ": s*=inf in " + std::to_string(infinite) + "/20; ";
  }
  return {ok, detail};
}

// ---- 7 ------------------------------------------------------------------

Verdict planted_fdr() {
  constexpr std::size_t n = 50, t = 2000, reps = 50, planted = 10;
  constexpr double f = 0.05, beta = 0.05;
  std::vector<double> fdp;
  int all_found = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    std::mt19937_64 rng(4000 + rep);
    std::bernoulli_distribution coin(f);
    std::vector<std::vector<Item>> rows(t);
    for (auto& row : rows) {
      for (Item i = 0; i < n; ++i) {
        // Item 2j + 1 (j < 10) copies item 2j, so the pair always co-occurs.
        const bool copy = i < 2 * planted && i % 2 == 1;
        if (copy ? (!row.empty() && row.back() == i - 1) : coin(rng)) row.push_back(i);
      }
    }
    const auto d = TransactionDataset::from_transactions(std::move(rows), n);
    const auto m = model_from_dataset(d);
    const Count s_min = find_poisson_threshold(m, 2, 1000, 0.01, Seed{rep + 1}).s_min_hat;
    const auto r = procedure1(d, m, 2, beta, s_min);
    std::size_t false_hits = 0, true_hits = 0;
    for (const auto& x : r.rejected) {
      const bool is_planted = x.items[0] < 2 * planted && x.items[0] % 2 == 0 && x.items[1] == x.items[0] + 1;
      (is_planted ? true_hits : false_hits)++;
    }
    fdp.push_back(r.ell == 0 ? 0.0 : static_cast<double>(false_hits) / r.ell);
    if (true_hits == planted) ++all_found;
  }
  double mean = 0, var = 0;
  for (double x : fdp) mean += x / reps;
  for (double x : fdp) var += (x - mean) * (x - mean) / (reps - 1);
  const double sigma = std::sqrt(var / reps);
  const bool ok = mean <= beta + 3 * sigma && all_found >= 45;
  return {ok, "empirical FDR " + fmt(mean, 4) + " (bound " + fmt(beta + 3 * sigma, 4) +
                  "), all 10 planted pairs rejected in " + std::to_string(all_found) + "/50 runs"};
}

// ---- 8 ------------------------------------------------------------------

Verdict chen_stein_consistency() {
  const oracle::TinyPairModel tiny{5, 20, 0.3L};
  const std::size_t trials = 1000;
  const auto c = estimate_b_curves(RandomModel::uniform(5, 20, 0.3), 2, 1, trials, Seed{2026});
  if (!c) return {false, "no itemset observed"};
  const double tol = 3.0 / std::sqrt(static_cast<double>(trials));
  // The criterion is read literally: absolute error of the summed b1 and b2.
  double worst1 = 0, worst2 = 0, pair1 = 0, pair2 = 0;
  Count at1 = 0, at2 = 0;
  for (std::size_t j = 0; j < c->supports.size(); ++j) {
    const Count s = c->supports[j];
    const double d1 = std::abs(c->b1[j] - static_cast<double>(tiny.b1(s)));
    const double d2 = std::abs(c->b2[j] - static_cast<double>(tiny.b2(s)));
    if (d1 > worst1) worst1 = d1, at1 = s;
    if (d2 > worst2) worst2 = d2, at2 = s;
    pair1 = std::max(pair1, d1 / static_cast<double>(tiny.overlapping_pairs()));
    pair2 = std::max(pair2, d2 / static_cast<double>(tiny.sharing_pairs()));
  }
  return {worst1 <= tol && worst2 <= tol,
          "max |b1 error| " + fmt(worst1, 3) + " at s=" + std::to_string(at1) + ", max |b2 error| " +
              fmt(worst2, 3) + " at s=" + std::to_string(at2) + " vs 3/sqrt(Delta) = " + fmt(tol, 3) +
              "; per overlapping pair: b1 " + fmt(pair1, 3) + ", b2 " + fmt(pair2, 3)};
}

// ---- 9 ------------------------------------------------------------------

Verdict trials_formula() {
  const std::size_t r = required_trials(0.01, 0.05);
  return {r == 2397, "required_trials(0.01, 0.05) = " + std::to_string(r)};
}

// ---- 10 -----------------------------------------------------------------

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<const char*> argv{"sigfim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "sigfim_acceptance";
  fs::create_directories(dir);
  const fs::path data = dir / "planted.dat";
  {
    const auto noise = generate(RandomModel::uniform(60, 3000, 0.05), Seed{10});
    std::ofstream out(data);
    for (std::size_t j = 0; j < noise.size(); ++j) {
      bool has0 = false;
      for (Item i : noise.transaction(j)) {
        out << i << ' ';
        has0 = has0 || i == 0;
      }
      if (has0) out << 1;
      if (noise.transaction(j).empty()) out << 59;
      out << '\n';
    }
  }
  std::string detail;
  bool ok = true;
  for (const char* cmd : {"find-smin", "procedure2"}) {
    const std::vector<std::string> args{cmd, "--dataset", data.string(), "--k", "2", "--trials", "300",
                                        "--seed", "123456789", "--epsilon", "0.01"};
    int c1 = -1, c2 = -1;
    const std::string a = run_cli(args, c1), b = run_cli(args, c2);
    const bool same = c1 == 0 && c2 == 0 && a == b && !a.empty();
    ok = ok && same;
    detail += std::string(cmd) + (same ? " identical (" + std::to_string(a.size()) + " bytes); "
                                       : " differs or failed (exit " + std::to_string(c1) + "); ");
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "miner matches brute force on 200 random instances", 10, miner_oracle},
      {2, "binomial and Poisson tails within 1e-12 of a 50-digit oracle on 500 points", 30, tail_kernels},
      {3, "worked example: tail ~8.32e-5 and ~41.6 expected pairs", 0, worked_example},
      {4, "published s_min_hat for Bms1/Bms2, k = 2, 3, within 10%", 1800, published_smin},
      {5, "Bms1 s* in [260, 292], Q(2,276) = 56, Bms2 Q(2,168) = 429", 600, published_threshold},
      {6, "null datasets from the Bms2 model give s* = inf in >= 19/20 runs", 1800, null_robustness},
      {7, "procedure1 FDR and power with 10 planted pairs", 900, planted_fdr},
      {8, "Chen-Stein estimates on the tiny exact model within 3/sqrt(Delta)", 300, chen_stein_consistency},
      {9, "required_trials(0.01, 0.05) = 2397", 0, trials_formula},
      {10, "find-smin and procedure2 are byte-reproducible", 0, determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      wanted.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.max_seconds > 0 && secs > c.max_seconds) {
      v.pass = false;
      v.detail += " [runtime " + fmt(secs, 3) + " s over the " + fmt(c.max_seconds) + " s bound]";
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.id << ": " << c.title
              << " -- " << v.detail << " (" << fmt(secs, 3) << " s)" << std::endl;
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
