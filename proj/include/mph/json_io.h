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

#ifndef MPH_JSON_IO_H_
#define MPH_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "mph/auction.h"
#include "mph/instances.h"
#include "mph/item_set.h"
#include "mph/ple.h"
#include "mph/properties.h"
#include "mph/valuation.h"
#include "mph/welfare.h"

namespace mph {

using Json = nlohmann::json;

// Parses text, turning syntax errors into ErrorCode::kInvalidInput.
Json ParseJson(const std::string& text);
Json ReadJsonFile(const std::string& path);

Json ItemSetToJson(ItemSet s);
ItemSet ItemSetFromJson(const Json& j, int m);

// {"m", "kind": "explicit"|"hypergraph"|"symmetric"|"mph", ...}. Explicit
// tables are indexed by bit pattern; mph clauses are edge lists.
Json ValuationToJson(const Valuation& v);
Valuation ValuationFromJson(const Json& j);

Json InstanceToJson(const AuctionInstance& inst);
AuctionInstance InstanceFromJson(const Json& j);

// Either representation; a JSON object with "bidders" is an instance.
Generated GeneratedFromJson(const Json& j);
Json GeneratedToJson(const Generated& g);

Json FractionalToJson(const FractionalSolution& sol);
FractionalSolution FractionalFromJson(const Json& j);

Json AllocationToJson(const Allocation& a);
Json RoundingStatsToJson(const RoundingStats& s);
Json PleWitnessToJson(const PleWitness& w, bool valid);
Json SymmetricCertificateToJson(const SymmetricLpCertificate& c);
Json PropertyReportToJson(const PropertyReport& r);
Json CceMetricsToJson(const CceMetrics& c);
Json NeReportToJson(const NeReport& r);
Json SmoothnessReportToJson(const SmoothnessReport& r);
Json ExpectationReportToJson(const ExpectationReport& r);

}  // namespace mph

#endif  // MPH_JSON_IO_H_
