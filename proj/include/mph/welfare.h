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

#ifndef MPH_WELFARE_H_
#define MPH_WELFARE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mph/item_set.h"
#include "mph/random.h"
#include "mph/valuation.h"

namespace mph {

// Known quantities attached to generated instances.
struct InstanceMetadata {
  std::optional<double> known_opt;
  std::optional<double> known_lp;
  std::optional<double> known_gap;
  std::optional<double> poa;
  std::optional<int> k;
  std::string construction;
  std::map<std::string, double> params;
};

struct AuctionInstance {
  int m = 0;
  std::vector<Valuation> bidders;
  InstanceMetadata metadata;

  int n() const { return static_cast<int>(bidders.size()); }
};

// Throws kInvalidInput unless n >= 1 and every bidder is defined on m items.
void ValidateInstance(const AuctionInstance& inst);

struct Allocation {
  std::vector<ItemSet> bundles;
};

bool IsFeasible(const Allocation& a, int m);
double SocialWelfare(const AuctionInstance& inst, const Allocation& a);

// Fast value lookups for one bidder: a dense table up to kMaxTableItems items,
// direct evaluation above that.
class ValueOracle {
 public:
  static constexpr int kMaxTableItems = 16;

  explicit ValueOracle(const Valuation& v);

  double operator()(ItemSet s) const;
  const std::optional<SingleMinded>& single_minded() const { return sm_; }

 private:
  const Valuation* v_;
  std::optional<SingleMinded> sm_;
  std::vector<double> table_;
};

struct WelfareResult {
  double value = 0.0;
  Allocation allocation;
};

inline constexpr double kMaxWelfareDpWork = 5e8;
inline constexpr int kMaxWelfareDpItems = 16;

// Exact welfare maximization. Instances made of single-minded bidders are
// solved by a branch-and-bound packing search; everything else by a dynamic
// program over (bidder, remaining items) costing n * 3^m. Among optimal
// allocations, earlier bidders receive the smaller bundles.
WelfareResult OptimalWelfare(const AuctionInstance& inst);

struct FractionalEntry {
  int bidder = 0;
  ItemSet set;
  double x = 0.0;
};

struct FractionalSolution {
  std::vector<FractionalEntry> entries;
  double objective = 0.0;
  long iterations = 0;
  int columns = 0;
  int pricing_rounds = 0;
  bool used_bland = false;
  // Rational optimum of the final restricted program, when requested.
  std::optional<std::string> exact_objective;
  std::optional<double> exact_value;
};

enum class ConfigLpMode { kExplicit, kColumnGeneration };

inline constexpr double kMaxExplicitLpColumns = 1e6;

struct ConfigLpOptions {
  ConfigLpMode mode = ConfigLpMode::kExplicit;
  bool exact_verify = false;
  int max_pricing_rounds = 10000;
};

FractionalSolution SolveConfigLp(const AuctionInstance& inst,
                                 const ConfigLpOptions& options = {});

// Checks per-bidder and per-item sums against 1 + tol and the objective.
bool IsFeasibleFractional(const FractionalSolution& sol,
                          const AuctionInstance& inst, double tol = 1e-7);

// One trial of random-permutation rounding.
Allocation RoundPermutation(const FractionalSolution& sol,
                            const AuctionInstance& inst, std::uint64_t seed);

struct RoundingStats {
  int trials = 0;
  double mean_welfare = 0.0;
  double std_err = 0.0;
  double ratio_to_lp = 0.0;
  double lp_objective = 0.0;

  std::string CsvHeader() const;
  std::string CsvRecord() const;
};

// Trial t uses seed SplitMix64(seed + t), so results do not depend on the
// thread count. threads <= 0 picks the hardware concurrency.
RoundingStats EstimateRoundedWelfare(const FractionalSolution& sol,
                                     const AuctionInstance& inst, int trials,
                                     std::uint64_t seed, int threads = 0);

// Lines of the projective plane of order q over the prime field, as sets of
// point indices. Order 1 is the triangle.
std::vector<ItemSet> ProjectivePlaneLines(int q);

// One single-minded bidder with value 1 per line of the plane of order k-1.
AuctionInstance IntegralityGapInstance(int k);

}  // namespace mph

#endif  // MPH_WELFARE_H_
