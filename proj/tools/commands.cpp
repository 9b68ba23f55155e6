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

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sigfim/chen_stein.hpp"
#include "sigfim/errors.hpp"
#include "sigfim/miner.hpp"
#include "sigfim/procedures.hpp"
#include "sigfim/random_model.hpp"
#include "sigfim/report.hpp"

namespace sigfim::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TransactionDataset load(const RunConfig& c) {
  if (c.dataset_path.empty()) throw UsageError("--dataset is required");
  return load_fimi(c.dataset_path, c.universe);
}

MinerOptions miner_options(const RunConfig& c) {
  MinerOptions o;
  o.cap = c.cap;
  return o;
}

MonteCarloOptions mc_options(const RunConfig& c) {
  MonteCarloOptions o;
  o.threads = c.threads;
  o.miner = miner_options(c);
  return o;
}

std::vector<Count> support_range(Count lo, Count hi) {
  std::vector<Count> out(hi >= lo ? hi - lo + 1 : 0);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

// Curve and lambda from one Monte Carlo ensemble, as persisted by find-smin.
struct EnsembleSummary {
  std::optional<Count> s_min_hat;
  std::optional<ChenSteinCurve> curve;
  LambdaEstimate lambda;
};

json to_json(const EnsembleSummary& e) {
  json j{{"lambda", sigfim::to_json(e.lambda)}};
  j["s_min_hat"] = e.s_min_hat ? json(*e.s_min_hat) : json(nullptr);
  j["curve"] = e.curve ? sigfim::to_json(*e.curve) : json(nullptr);
  return j;
}

EnsembleSummary read_ensemble(const std::string& path, std::size_t k) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ensemble file " + path);
  const json doc = json::parse(in);
  const json& e = doc.at("ensemble");
  EnsembleSummary out;
  if (!e.at("s_min_hat").is_null()) out.s_min_hat = e.at("s_min_hat").get<Count>();
  if (!e.at("curve").is_null()) out.curve = curve_from_json(e.at("curve"));
  out.lambda = lambda_from_json(e.at("lambda"));
  if (out.lambda.k != k) throw UsageError("ensemble file was built for a different --k");
  return out;
}

// Runs the threshold search, then (optionally lower) lambda on the same trials.
EnsembleSummary run_ensemble(const RunConfig& c, const RandomModel& model, bool search,
                             std::optional<Count> lambda_from) {
  MonteCarloEnsemble ensemble(model, c.k, c.effective_trials(), Seed{c.seed}, mc_options(c));
  EnsembleSummary out;
  Count lo = lambda_from.value_or(1);
  if (search) {
    PoissonThreshold found = find_poisson_threshold(ensemble, c.epsilon);
    out.s_min_hat = found.s_min_hat;
    out.curve = std::move(found.curve);
    if (!lambda_from) lo = found.s_min_hat;
  }
  ensemble.mine_down_to(lo);
  out.lambda = ensemble.lambda(support_range(lo, ensemble.max_observed_support() + 1));
  return out;
}

json run_header(const char* kind, const RunConfig& c, const TransactionDataset& d) {
  return {{"schema_version", kReportSchemaVersion},
          {"kind", kind},
          {"dataset", dataset_summary(d)},
          {"k", c.k}};
}

json itemset_rows(const MiningResult& r) {
  json rows = json::array();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const auto x = r.itemset(j);
    rows.push_back({{"items", std::vector<Item>(x.begin(), x.end())}, {"support", r.support(j)}});
  }
  return rows;
}

std::string format_p(const json& p) {
  std::ostringstream s;
  if (p.at("log_p_value").is_null()) {
    s << "0";
  } else {
    s << std::setprecision(4) << p.at("p_value").get<double>();
  }
  return s.str();
}

void write_stats_table(std::ostream& log, const json& s) {
  log << "transactions t      " << s["transactions"] << "\n"
      << "distinct items n    " << s["distinct_items"] << "\n"
      << "universe            " << s["universe"] << "\n"
      << "average length      " << std::fixed << std::setprecision(2)
      << s["average_length"].get<double>() << std::defaultfloat << "\n"
      << "max length          " << s["max_length"] << "\n"
      << "frequency range     [" << std::setprecision(6) << s["f_min"].get<double>() << ", "
      << s["f_max"].get<double>() << "]\n";
}

void validate(const RunConfig& c) {
  auto open_unit = [](double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) throw UsageError(std::string(name) + " must lie in (0, 1)");
  };
  open_unit(c.epsilon, "--epsilon");
  open_unit(c.alpha, "--alpha");
  open_unit(c.beta, "--beta");
  if (c.delta) open_unit(*c.delta, "--delta");
  if (c.k == 0) throw UsageError("--k must be positive");
  if (c.s_min && *c.s_min == 0) throw UsageError("--s-min must be positive");
  if (c.frequency < 0.0 || c.frequency > 1.0) throw UsageError("--frequency must lie in [0, 1]");
}

}  // namespace

std::size_t RunConfig::effective_trials() const {
  return delta ? required_trials(epsilon, *delta) : trials;
}

json cmd_stats(const RunConfig& c, std::ostream& log) {
  const TransactionDataset d = load(c);
  json s = dataset_summary(d);
  const FrequencyVector f = d.size() == 0 ? FrequencyVector{} : item_frequencies(d);
  double f_min = 0.0, f_max = 0.0;
  bool any = false;
  for (double x : f.f) {
    if (x <= 0.0) continue;
    f_min = any ? std::min(f_min, x) : x;
    f_max = any ? std::max(f_max, x) : x;
    any = true;
  }
  s["f_min"] = f_min;
  s["f_max"] = f_max;
  write_stats_table(log, s);
  return s;
}

json cmd_find_smin(const RunConfig& c, std::ostream& log) {
  const TransactionDataset d = load(c);
  const RandomModel model = model_from_dataset(d);
  json out = run_header("find_smin", c, d);
  out["epsilon"] = c.epsilon;
  out["trials"] = c.effective_trials();
  out["seed"] = c.seed;
  out["max_expected_support"] = max_expected_support(model, c.k);
  const EnsembleSummary e = run_ensemble(c, model, true, std::nullopt);
  out["s_min_hat"] = *e.s_min_hat;
  out["ensemble"] = to_json(e);

  log << "k=" << c.k << " trials=" << c.effective_trials() << " epsilon=" << c.epsilon
      << " s_tilde=" << e.curve->s_tilde << " window=" << e.curve->window_size
      << "\ns_min_hat=" << *e.s_min_hat << "\n";
  log << std::setw(8) << "s" << std::setw(14) << "b1" << std::setw(14) << "b2" << std::setw(14)
      << "lambda" << "\n";
  const auto& cv = *e.curve;
  for (std::size_t j = 0; j < cv.supports.size() && j < 12; ++j) {
    log << std::setw(8) << cv.supports[j] << std::setw(14) << std::setprecision(5) << cv.b1[j]
        << std::setw(14) << cv.b2[j] << std::setw(14) << cv.lambda[j] << "\n";
  }
  return out;
}

json cmd_procedure1(const RunConfig& c, std::ostream& log) {
  const TransactionDataset d = load(c);
  const RandomModel model = model_from_dataset(d);
  json out = run_header("procedure1", c, d);
  out["beta"] = c.beta;

  Count s_min;
  if (c.s_min) {
    s_min = *c.s_min;
    out["s_min_source"] = "flag";
  } else if (!c.ensemble_path.empty()) {
    const EnsembleSummary e = read_ensemble(c.ensemble_path, c.k);
    if (!e.s_min_hat) throw UsageError("ensemble file carries no s_min_hat; pass --s-min");
    s_min = *e.s_min_hat;
    out["s_min_source"] = "ensemble_file";
  } else {
    out["trials"] = c.effective_trials();
    out["epsilon"] = c.epsilon;
    out["seed"] = c.seed;
    const EnsembleSummary e = run_ensemble(c, model, true, std::nullopt);
    s_min = *e.s_min_hat;
    out["s_min_source"] = "monte_carlo";
    out["ensemble"] = to_json(e);
  }
  out["s_min"] = s_min;

  const ByOutcome r = procedure1(d, model, c.k, c.beta, s_min, miner_options(c));
  json outcome = sigfim::to_json(r);
  if (c.summary_only) outcome.erase("rejected");
  out["outcome"] = std::move(outcome);

  log << "k=" << c.k << " s_min=" << s_min << " tested=" << r.tested << " m=" << r.m
      << " rejected=" << r.ell << "\n";
  return out;
}

json cmd_procedure2(const RunConfig& c, std::ostream& log) {
  const TransactionDataset d = load(c);
  const RandomModel model = model_from_dataset(d);
  json out = run_header("procedure2", c, d);
  out["alpha"] = c.alpha;
  out["beta"] = c.beta;

  EnsembleSummary e;
  if (!c.ensemble_path.empty()) {
    e = read_ensemble(c.ensemble_path, c.k);
    out["ensemble_source"] = "ensemble_file";
  } else {
    out["trials"] = c.effective_trials();
    out["epsilon"] = c.epsilon;
    out["seed"] = c.seed;
    e = run_ensemble(c, model, !c.s_min.has_value(), c.s_min);
    out["ensemble_source"] = "monte_carlo";
  }
  if (!c.s_min && !e.s_min_hat) throw UsageError("ensemble file carries no s_min_hat; pass --s-min");
  const Count s_min = c.s_min.value_or(e.s_min_hat.value_or(1));
  if (e.lambda.supports.empty() || e.lambda.supports.front() > s_min)
    throw UsageError("lambda estimate does not reach down to s_min " + std::to_string(s_min));
  out["s_min"] = s_min;
  out["ensemble"] = to_json(e);

  const ThresholdOutcome r =
      procedure2(d, model, c.k, c.alpha, c.beta, s_min, e.lambda, miner_options(c));
  out["outcome"] = sigfim::to_json(r);
  out["s_star"] = r.s_star ? json(*r.s_star) : json(nullptr);
  if (r.s_star) {
    const MiningResult found = mine_fixed_size(d, c.k, *r.s_star, miner_options(c));
    json disc{{"count", found.size()}};
    if (!c.summary_only) disc["itemsets"] = itemset_rows(found);
    out["discoveries"] = std::move(disc);
  } else {
    out["discoveries"] = json{{"count", 0}};
  }

  log << "k=" << c.k << " s_min=" << s_min << " s_max=" << r.s_max << " h=" << r.h << "\n";
  log << std::setw(4) << "i" << std::setw(10) << "s_i" << std::setw(10) << "Q" << std::setw(14)
      << "lambda" << std::setw(12) << "p" << "  reject\n";
  const json& levels = out["outcome"]["levels"];
  for (const auto& l : levels) {
    log << std::setw(4) << l["index"] << std::setw(10) << l["support"] << std::setw(10) << l["q"]
        << std::setw(14) << std::setprecision(5) << r.levels[l["index"].get<std::size_t>()].lambda
        << std::setw(12) << format_p(l) << "  " << (l["rejected"].get<bool>() ? "yes" : "no")
        << "\n";
  }
  log << "s* = " << (r.s_star ? std::to_string(*r.s_star) : std::string("infinity")) << "\n";
  return out;
}

json cmd_generate(const RunConfig& c, std::ostream& data, std::ostream& log) {
  std::optional<RandomModel> model;
  std::string source;
  if (!c.dataset_path.empty()) {
    model = model_from_dataset(load(c));
    source = "dataset";
  } else {
    if (c.transactions == 0 || c.items == 0)
      throw UsageError("generate needs --dataset or --transactions and --items");
    model = RandomModel::uniform(c.items, c.transactions, c.frequency);
    source = "uniform";
  }
  const TransactionDataset g = generate(*model, Seed{c.seed});
  write_fimi(data, g);
  json out{{"schema_version", kReportSchemaVersion},
           {"kind", "generate"},
           {"model", source},
           {"seed", c.seed},
           {"transactions", g.size()},
           {"universe", model->universe()},
           {"total_items", g.total_items()}};
  log << "generated " << g.size() << " transactions, " << g.total_items() << " item occurrences\n";
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sigfim: significant frequent itemsets via Poisson approximation"};
  app.require_subcommand(1);
  RunConfig c;
  std::optional<std::size_t> universe;
  std::optional<double> delta;
  std::optional<Count> s_min;

  auto common = [&](CLI::App* sub, bool needs_dataset) {
    auto* opt = sub->add_option("--dataset", c.dataset_path, "FIMI transaction file")->check(CLI::ExistingFile);
    if (needs_dataset) opt->required();
    sub->add_option("--universe", universe, "declared item universe size n");
    sub->add_option("--out", c.output_path, "write the report here instead of stdout");
    sub->add_option("--cap", c.cap, "bound on mined itemsets and live candidates")->capture_default_str();
  };
  auto k_opt = [&](CLI::App* sub) {
    sub->add_option("--k", c.k, "itemset size")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto monte_carlo = [&](CLI::App* sub) {
    sub->add_option("--epsilon", c.epsilon, "variation-distance target")->capture_default_str();
    sub->add_option("--trials", c.trials, "Monte Carlo datasets")->capture_default_str();
    sub->add_option("--delta", delta, "confidence; sets trials to ceil(8 ln(1/delta)/epsilon)");
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads (0: all cores)")->capture_default_str();
  };

  auto* stats = app.add_subcommand("stats", "dataset summary");
  common(stats, true);

  auto* find = app.add_subcommand("find-smin", "Monte Carlo search for the Poisson threshold");
  common(find, true);
  k_opt(find);
  monte_carlo(find);

  auto* p1 = app.add_subcommand("procedure1", "per-itemset tests with BY correction");
  common(p1, true);
  k_opt(p1);
  monte_carlo(p1);
  p1->add_option("--beta", c.beta, "FDR level")->capture_default_str();
  p1->add_option("--s-min", s_min, "use this s_min instead of searching");
  p1->add_option("--ensemble", c.ensemble_path, "reuse a find-smin report")->check(CLI::ExistingFile);
  p1->add_flag("--summary-only", c.summary_only, "omit itemset lists");

  auto* p2 = app.add_subcommand("procedure2", "support threshold with FDR control");
  common(p2, true);
  k_opt(p2);
  monte_carlo(p2);
  p2->add_option("--alpha", c.alpha, "significance level")->capture_default_str();
  p2->add_option("--beta", c.beta, "FDR level")->capture_default_str();
  p2->add_option("--s-min", s_min, "use this s_min instead of searching");
  p2->add_option("--ensemble", c.ensemble_path, "reuse a find-smin report")->check(CLI::ExistingFile);
  p2->add_flag("--summary-only", c.summary_only, "omit itemset lists");

  auto* gen = app.add_subcommand("generate", "draw a dataset from the independent-items model");
  common(gen, false);
  gen->add_option("--seed", c.seed, "random seed")->capture_default_str();
  gen->add_option("--transactions", c.transactions, "t for a uniform model");
  gen->add_option("--items", c.items, "n for a uniform model");
  gen->add_option("--frequency", c.frequency, "common item frequency for a uniform model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  c.universe = universe;
  c.delta = delta;
  c.s_min = s_min;

  try {
    validate(c);
    std::ofstream file;
    if (!c.output_path.empty()) {
      file.open(c.output_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + c.output_path);
    }
    std::ostream& sink = c.output_path.empty() ? out : file;

    json report;
    if (*stats) {
      report = cmd_stats(c, err);
    } else if (*find) {
      report = cmd_find_smin(c, err);
    } else if (*p1) {
      report = cmd_procedure1(c, err);
    } else if (*p2) {
      report = cmd_procedure2(c, err);
    } else {
      report = cmd_generate(c, sink, err);
      if (!c.output_path.empty()) out << report.dump(2) << "\n";
      return kOk;
    }
    sink << report.dump(2) << "\n";
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const PoissonRegimeError& e) {
    err << e.what() << "\n";
    return kPoissonNotReached;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sigfim::cli
