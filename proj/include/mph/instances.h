// Copyright 2026 The MPH Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPH_INSTANCES_H_
#define MPH_INSTANCES_H_

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mph/valuation.h"
#include "mph/welfare.h"

namespace mph {

using Params = nlohmann::json;
using Generated = std::variant<Valuation, AuctionInstance>;

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  std::string description;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  // "valuation" or "instance".
  std::string produces;
  std::vector<ParamSpec> params;
  // Known quantities and where they come from, for listing.
  std::vector<std::string> expectations;
};

const std::vector<CatalogEntry>& Catalog();

// Builds a catalog entry. Missing parameters take their defaults; unknown
// names or out-of-range values raise kInvalidInput.
Generated Gen(const std::string& name, const Params& params = Params::object());

// Parameters with defaults filled in.
Params ResolveParams(const std::string& name, const Params& params);

struct ExpectationResult {
  std::string name;
  // PAPER, DERIVED or TRIVIAL.
  std::string tag;
  std::string relation;
  double expected = 0.0;
  double actual = 0.0;
  bool ok = false;
};

struct ExpectationReport {
  std::string entry;
  Params params;
  std::vector<ExpectationResult> results;
  bool passed = false;
};

ExpectationReport VerifyExpectations(const std::string& name,
                                     const Params& params = Params::object());

}  // namespace mph

#endif  // MPH_INSTANCES_H_
