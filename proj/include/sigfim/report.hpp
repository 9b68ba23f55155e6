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

#include "json.hpp"

#include "sigfim/chen_stein.hpp"
#include "sigfim/dataset.hpp"
#include "sigfim/procedures.hpp"

namespace sigfim {

inline constexpr int kReportSchemaVersion = 1;

// JSON documents written by the command-line tool. Non-finite numbers become
// null; p-values carry both the probability and its natural log.
nlohmann::json to_json(const ChenSteinCurve& c);
nlohmann::json to_json(const LambdaEstimate& l);
nlohmann::json to_json(const ByOutcome& o);
nlohmann::json to_json(const ThresholdOutcome& o);
nlohmann::json dataset_summary(const TransactionDataset& d);

// Inverse of to_json for the documents that feed later runs.
ChenSteinCurve curve_from_json(const nlohmann::json& j);
LambdaEstimate lambda_from_json(const nlohmann::json& j);

}  // namespace sigfim
