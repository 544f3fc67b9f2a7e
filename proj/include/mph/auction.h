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

#ifndef MPH_AUCTION_H_
#define MPH_AUCTION_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mph/item_set.h"
#include "mph/welfare.h"

namespace mph {

enum class PaymentRule { kFirstPrice, kSecondPrice };

const char* PaymentRuleName(PaymentRule rule);
// Accepts "first" and "second".
std::optional<PaymentRule> ParsePaymentRule(const std::string& name);

// bids[i][j] is bidder i's bid on item j.
struct BidProfile {
  std::vector<std::vector<double>> bids;
};

struct AuctionOutcome {
  Allocation allocation;
  std::vector<int> winners;
  std::vector<double> payments;
  std::vector<double> utilities;
  // Winning bid per item.
  std::vector<double> prices;
  double welfare = 0.0;
  double revenue = 0.0;
};

// Each item goes to its highest bidder, ties to the lowest index. First price
// charges the winning bid, second price the highest competing bid.
AuctionOutcome RunAuction(const AuctionInstance& inst, const BidProfile& b,
                          PaymentRule rule);

// Bid `level` on every item of `bundle`, zero elsewhere.
struct BundleBid {
  ItemSet bundle;
  double level = 0.0;

  std::vector<double> Expand(int m) const;
  friend bool operator==(const BundleBid&, const BundleBid&) = default;
};

using ActionSet = std::vector<BundleBid>;

// Per bidder: the all-zero bid, then uniform bids on each candidate bundle at
// levels delta, 2 delta, ... up to v_i(S)/|S|. Candidates are the bidder's
// bundle in an optimal allocation (when one is computable), the desired set of
// a single-minded bidder, and every singleton.
std::vector<ActionSet> BuildActionSets(const AuctionInstance& inst,
                                       double grid_step);

// Default grid step: 2% of the largest grand-bundle value.
double DefaultGridStep(const AuctionInstance& inst);

struct LearnConfig {
  long iterations = 10000;
  // Zero selects DefaultGridStep.
  double grid_step = 0.0;
  // Zero selects sqrt(ln |A_i| / T) per bidder.
  double learning_rate = 0.0;
  std::uint64_t seed = 1;
  PaymentRule rule = PaymentRule::kFirstPrice;
  // Rows kept in the trace; zero keeps about a thousand.
  long trace_every = 0;
};

struct TraceRow {
  long iteration = 0;
  double avg_welfare = 0.0;
  std::vector<double> avg_utility;
  std::vector<double> regret;
};

// Uniform distribution over the joint profiles played during learning.
struct EmpiricalCce {
  long iterations = 0;
  PaymentRule rule = PaymentRule::kFirstPrice;
  double grid_step = 0.0;
  std::vector<ActionSet> actions;
  // history[t][i]: index into actions[i] played at round t.
  std::vector<std::vector<int>> history;
  // Average external regret against the realized opponent play.
  std::vector<double> regret;
  std::vector<double> regret_bound;
  std::vector<double> learning_rate;
  std::vector<TraceRow> trace;

  BidProfile Profile(long t, int m) const;
  std::string TraceCsv() const;
};

// Multiplicative weights (Hedge) for every bidder over its action set, with
// utilities scaled by v_i(M). Pass explicit action sets to override the
// builder.
EmpiricalCce NoRegretLearn(const AuctionInstance& inst,
                           const LearnConfig& config,
                           const std::vector<ActionSet>* actions = nullptr);

struct CceMetrics {
  double expected_sw = 0.0;
  double sw_std_err = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  double revenue = 0.0;
};

CceMetrics ComputeCceMetrics(const AuctionInstance& inst,
                             const EmpiricalCce& cce);

// Mixed strategy of the projective-plane equilibrium: plane bidders draw x
// with Pr[x <= t] = (k t)^(1/(k-1)^2) on [0, 1/k] and bid it on their whole
// line; auxiliary bidders bid zero.
struct NeStrategy {
  struct Bidder {
    ItemSet bundle;
    bool analytic = false;
  };

  int k = 2;
  std::vector<Bidder> bidders;

  double Cdf(double t) const;
  double Quantile(double u) const;
  double Sample(int bidder, std::mt19937_64& rng) const;
};

struct PoaLowerBound {
  AuctionInstance instance;
  NeStrategy strategy;
  int k = 0;
  int planes = 0;
  // Lines per plane, which is also the number of auxiliary bidders.
  int lines = 0;
};

// `planes` copies of the plane of order k-1 with single-minded bidders of
// value 1 on each line, plus one auxiliary bidder per point index wanting that
// point in every plane. planes <= 0 means k.
PoaLowerBound PoaLbInstance(int k, int planes = 0);

struct NeVerifyOptions {
  int grid_points = 100;
  long samples = 1000000;
  long welfare_samples = 20000;
  double closed_form_tol = 1e-6;
  double monte_carlo_tol = 1e-2;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct NeReport {
  // Largest |expected utility| of a plane bidder over the x grid.
  double closed_form_max_abs = 0.0;
  // Smallest payment - value of an auxiliary bidder over the interior grid.
  double aux_min_gap = 0.0;
  bool aux_abstains = false;
  double mc_equal_max_abs = 0.0;
  double mc_unequal_max = 0.0;
  double mc_aux_max = 0.0;
  std::string worst_deviation;
  double welfare_mean = 0.0;
  double welfare_std_err = 0.0;
  double opt = 0.0;
  double measured_poa = 0.0;
  double metadata_poa = 0.0;
  bool passed = false;
};

NeReport VerifyMixedNe(const PoaLowerBound& lb,
                       const NeVerifyOptions& options = {});

enum class Deviation { kPriceScale, kSampleMax, kRandomFirstPrice };

const char* DeviationName(Deviation d);
std::optional<Deviation> ParseDeviation(const std::string& name);

struct SmoothnessOptions {
  double lambda = 0.5;
  double mu = 2.0;
  Deviation deviation = Deviation::kPriceScale;
  // Scale of the price_scale and sample_max deviations.
  int k = 1;
  long trials = 10000;
  std::uint64_t seed = 1;
  // Profiles are drawn uniformly from this list when given, otherwise each
  // bid is uniform on [0, max_i v_i(M)].
  const std::vector<BidProfile>* population = nullptr;
};

struct SmoothnessReport {
  long trials = 0;
  double opt = 0.0;
  double mean_lhs = 0.0;
  double lhs_std_err = 0.0;
  double mean_rhs = 0.0;
  double margin = 0.0;
  double mean_revenue = 0.0;
  // Profiles where the deviation sum falls below the right-hand side by more
  // than 1e-9.
  long violations = 0;
  double worst_margin = 0.0;
};

// Estimates sum_i u_i(b*_i, b_-i) against lambda * Opt - mu * sum_i P_i(b).
// random_first_price uses the closed-form expectation of the randomized
// single-item deviation, so it applies to one-item instances only.
SmoothnessReport SmoothnessCheck(const AuctionInstance& inst,
                                 const SmoothnessOptions& options);

}  // namespace mph

#endif  // MPH_AUCTION_H_
