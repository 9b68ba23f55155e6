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

#include "sigfim/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sigfim {
namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json numbers(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

std::vector<double> read_numbers(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(read_number(x));
  return out;
}

json p_value(LogProb p) { return {{"p_value", p.prob()}, {"log_p_value", number(p.log())}}; }

void check_kind(const json& j, const char* kind) {
  if (j.value("schema_version", 0) != kReportSchemaVersion)
    throw std::invalid_argument("unsupported report schema version");
  if (j.value("kind", std::string{}) != kind)
    throw std::invalid_argument(std::string("expected a '") + kind + "' document");
}

}  // namespace

json to_json(const ChenSteinCurve& c) {
  json j{{"schema_version", kReportSchemaVersion},
         {"kind", "chen_stein_curve"},
         {"k", c.k},
         {"delta_trials", c.delta_trials},
         {"epsilon", number(c.epsilon)},
         {"seed", c.seed.value},
         {"s_tilde", c.s_tilde},
         {"window_size", c.window_size},
         {"supports", c.supports},
         {"b1", numbers(c.b1)},
         {"b2", numbers(c.b2)},
         {"lambda", numbers(c.lambda)}};
  j["s_min_hat"] = c.s_min_hat ? json(*c.s_min_hat) : json(nullptr);
  return j;
}

json to_json(const LambdaEstimate& l) {
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "lambda_estimate"},
          {"k", l.k},
          {"delta_trials", l.delta_trials},
          {"seed", l.seed.value},
          {"max_observed_support", l.max_observed_support},
          {"supports", l.supports},
          {"lambda", numbers(l.lambda)}};
}

json to_json(const ByOutcome& o) {
  json rejected = json::array();
  for (const auto& r : o.rejected) {
    json row = p_value(r.p_value);
    row["items"] = r.items;
    row["support"] = r.support;
    rejected.push_back(std::move(row));
  }
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "by_outcome"},
          {"k", o.k},
          {"s_min", o.s_min},
          {"m", number(o.m)},
          {"beta", o.beta},
          {"tested", o.tested},
          {"ell", o.ell},
          {"rejected", std::move(rejected)}};
}

json to_json(const ThresholdOutcome& o) {
  json levels = json::array();
  for (const auto& l : o.levels) {
    json row = p_value(l.p_value);
    row["index"] = l.index;
    row["support"] = l.support;
    row["q"] = l.q;
    row["lambda"] = number(l.lambda);
    row["alpha"] = l.alpha;
    row["beta_factor"] = number(l.beta_factor);
    row["rejected"] = l.rejected;
    levels.push_back(std::move(row));
  }
  json j{{"schema_version", kReportSchemaVersion},
         {"kind", "threshold_outcome"},
         {"k", o.k},
         {"s_min", o.s_min},
         {"s_max", o.s_max},
         {"h", o.h},
         {"alpha", o.alpha},
         {"beta", o.beta},
         {"levels", std::move(levels)}};
  // null encodes s* = infinity.
  j["s_star"] = o.s_star ? json(*o.s_star) : json(nullptr);
  return j;
}

json dataset_summary(const TransactionDataset& d) {
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "dataset_summary"},
          {"transactions", d.size()},
          {"distinct_items", d.distinct_items()},
          {"universe", d.universe()},
          {"hypothesis_items", d.hypothesis_items()},
          {"average_length", d.average_length()},
          {"max_length", d.max_length()},
          {"max_item_support", d.size() == 0 ? 0 : max_item_support(d)}};
}

ChenSteinCurve curve_from_json(const json& j) {
  check_kind(j, "chen_stein_curve");
  ChenSteinCurve c;
  c.k = j.at("k").get<std::size_t>();
  c.delta_trials = j.at("delta_trials").get<std::size_t>();
  c.epsilon = read_number(j.at("epsilon"));
  c.seed = Seed{j.at("seed").get<std::uint64_t>()};
  c.s_tilde = j.at("s_tilde").get<Count>();
  c.window_size = j.at("window_size").get<std::size_t>();
  c.supports = j.at("supports").get<std::vector<Count>>();
  c.b1 = read_numbers(j.at("b1"));
  c.b2 = read_numbers(j.at("b2"));
  c.lambda = read_numbers(j.at("lambda"));
  if (!j.at("s_min_hat").is_null()) c.s_min_hat = j.at("s_min_hat").get<Count>();
  const std::size_t n = c.supports.size();
  if (c.b1.size() != n || c.b2.size() != n || c.lambda.size() != n)
    throw std::invalid_argument("curve arrays differ in length");
  return c;
}

LambdaEstimate lambda_from_json(const json& j) {
  check_kind(j, "lambda_estimate");
  LambdaEstimate l;
  l.k = j.at("k").get<std::size_t>();
  l.delta_trials = j.at("delta_trials").get<std::size_t>();
  l.seed = Seed{j.at("seed").get<std::uint64_t>()};
  l.max_observed_support = j.at("max_observed_support").get<Count>();
  l.supports = j.at("supports").get<std::vector<Count>>();
  l.lambda = read_numbers(j.at("lambda"));
  if (l.lambda.size() != l.supports.size())
    throw std::invalid_argument("lambda arrays differ in length");
  return l;
}

}  // namespace sigfim
