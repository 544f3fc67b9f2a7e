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

#include "mph/auction.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "mph/error.h"
#include "mph/random.h"

namespace mph {
namespace {

constexpr double kNoBid = -std::numeric_limits<double>::infinity();

// Highest competing bid per item and the lowest index placing it.
struct Competition {
  std::vector<double> high;
  std::vector<int> who;
};

Competition Compete(const std::vector<std::vector<double>>& bids, int self,
                    int m) {
  Competition c{std::vector<double>(m, kNoBid), std::vector<int>(m, -1)};
  for (int i = 0; i < static_cast<int>(bids.size()); ++i) {
    if (i == self) continue;
    for (int j = 0; j < m; ++j) {
      if (bids[i][j] > c.high[j]) {
        c.high[j] = bids[i][j];
        c.who[j] = i;
      }
    }
  }
  return c;
}

bool Wins(double bid, int self, const Competition& c, int j) {
  return bid > c.high[j] || (bid == c.high[j] && self < c.who[j]);
}

struct Deal {
  ItemSet won;
  double payment = 0.0;
};

Deal Settle(const std::vector<double>& bid, int self, const Competition& c,
            PaymentRule rule) {
  Deal d;
  for (int j = 0; j < static_cast<int>(bid.size()); ++j) {
    if (!Wins(bid[j], self, c, j)) continue;
    d.won = d.won.With(j);
    d.payment += rule == PaymentRule::kFirstPrice ? bid[j]
                                                  : std::max(c.high[j], 0.0);
  }
  return d;
}

void CheckProfile(const AuctionInstance& inst, const BidProfile& b) {
  if (static_cast<int>(b.bids.size()) != inst.n()) {
    Fail(ErrorCode::kInvalidInput, "bid profile has wrong bidder count");
  }
  for (const auto& row : b.bids) {
    if (static_cast<int>(row.size()) != inst.m) {
      Fail(ErrorCode::kInvalidInput, "bid vector has wrong item count");
    }
    for (double x : row) {
      if (!std::isfinite(x) || x < 0.0) {
        Fail(ErrorCode::kInvalidInput, "bids must be finite and nonnegative");
      }
    }
  }
}

std::vector<ValueOracle> Oracles(const AuctionInstance& inst) {
  std::vector<ValueOracle> v;
  v.reserve(inst.n());
  for (const Valuation& b : inst.bidders) v.emplace_back(b);
  return v;
}

double GrandValue(const ValueOracle& v, int m) {
  return v(ItemSet::Full(m));
}

}  // namespace

const char* PaymentRuleName(PaymentRule rule) {
  return rule == PaymentRule::kFirstPrice ? "first" : "second";
}

std::optional<PaymentRule> ParsePaymentRule(const std::string& name) {
  if (name == "first") return PaymentRule::kFirstPrice;
  if (name == "second") return PaymentRule::kSecondPrice;
  return std::nullopt;
}

AuctionOutcome RunAuction(const AuctionInstance& inst, const BidProfile& b,
                          PaymentRule rule) {
  ValidateInstance(inst);
  CheckProfile(inst, b);
  const int n = inst.n();
  const int m = inst.m;
  AuctionOutcome out;
  out.allocation.bundles.assign(n, ItemSet());
  out.winners.assign(m, 0);
  out.prices.assign(m, 0.0);
  out.payments.assign(n, 0.0);
  out.utilities.assign(n, 0.0);
  for (int j = 0; j < m; ++j) {
    int w = 0;
    for (int i = 1; i < n; ++i) {
      if (b.bids[i][j] > b.bids[w][j]) w = i;
    }
    double second = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i != w) second = std::max(second, b.bids[i][j]);
    }
    out.winners[j] = w;
    out.prices[j] = b.bids[w][j];
    out.allocation.bundles[w] = out.allocation.bundles[w].With(j);
    out.payments[w] +=
        rule == PaymentRule::kFirstPrice ? b.bids[w][j] : second;
  }
  for (int i = 0; i < n; ++i) {
    const double v = Eval(inst.bidders[i], out.allocation.bundles[i]);
    out.utilities[i] = v - out.payments[i];
    out.welfare += v;
    out.revenue += out.payments[i];
  }
  return out;
}

std::vector<double> BundleBid::Expand(int m) const {
  std::vector<double> b(m, 0.0);
  for (int j : bundle.Items()) b[j] = level;
  return b;
}

double DefaultGridStep(const AuctionInstance& inst) {
  double top = 0.0;
  for (const Valuation& b : inst.bidders) {
    top = std::max(top, Eval(b, ItemSet::Full(inst.m)));
  }
  return top > 0.0 ? 0.02 * top : 1.0;
}

std::vector<ActionSet> BuildActionSets(const AuctionInstance& inst,
                                       double grid_step) {
  ValidateInstance(inst);
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    Fail(ErrorCode::kInvalidInput, "grid step must be positive");
  }
  std::optional<Allocation> opt;
  try {
    opt = OptimalWelfare(inst).allocation;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapacity) throw;
  }
  std::vector<ActionSet> sets(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    const ValueOracle v(inst.bidders[i]);
    std::vector<ItemSet> bundles;
    if (opt && !opt->bundles[i].empty()) bundles.push_back(opt->bundles[i]);
    if (v.single_minded()) bundles.push_back(v.single_minded()->bundle);
    for (int j = 0; j < inst.m; ++j) bundles.push_back(ItemSet::Singleton(j));
    ActionSet& a = sets[i];
    a.push_back({ItemSet(), 0.0});
    std::set<ItemSet> seen;
    for (ItemSet s : bundles) {
      if (!seen.insert(s).second) continue;
      const double cap = v(s) / s.size();
      for (long l = 1; l * grid_step <= cap + 1e-12; ++l) {
        a.push_back({s, l * grid_step});
      }
    }
  }
  return sets;
}

BidProfile EmpiricalCce::Profile(long t, int m) const {
  BidProfile b;
  const auto& row = history.at(t);
  for (std::size_t i = 0; i < row.size(); ++i) {
    b.bids.push_back(actions[i][row[i]].Expand(m));
  }
  return b;
}

std::string EmpiricalCce::TraceCsv() const {
  std::ostringstream os;
  const std::size_t n = actions.size();
  os << "iteration,avg_welfare";
  for (std::size_t i = 0; i < n; ++i) os << ",utility_" << i;
  for (std::size_t i = 0; i < n; ++i) os << ",regret_" << i;
  os << "\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof(buf), ",%.10g", x);
    os << buf;
  };
  for (const TraceRow& r : trace) {
    os << r.iteration;
    put(r.avg_welfare);
    for (double u : r.avg_utility) put(u);
    for (double g : r.regret) put(g);
    os << "\n";
  }
  return os.str();
}

EmpiricalCce NoRegretLearn(const AuctionInstance& inst,
                           const LearnConfig& config,
                           const std::vector<ActionSet>* actions) {
  ValidateInstance(inst);
  if (config.iterations < 1) {
    Fail(ErrorCode::kInvalidInput, "iterations must be positive");
  }
  const int n = inst.n();
  const int m = inst.m;
  const long T = config.iterations;
  EmpiricalCce cce;
  cce.iterations = T;
  cce.rule = config.rule;
  cce.grid_step =
      config.grid_step > 0.0 ? config.grid_step : DefaultGridStep(inst);
  cce.actions = actions != nullptr ? *actions : BuildActionSets(inst, cce.grid_step);
  if (static_cast<int>(cce.actions.size()) != n) {
    Fail(ErrorCode::kInvalidInput, "one action set per bidder is required");
  }
  for (const ActionSet& a : cce.actions) {
    if (a.empty()) Fail(ErrorCode::kInvalidInput, "empty action set");
    for (const BundleBid& x : a) {
      if (!x.bundle.FitsIn(m) || !(x.level >= 0.0) || !std::isfinite(x.level)) {
        Fail(ErrorCode::kInvalidInput, "invalid action");
      }
    }
  }
  const std::vector<ValueOracle> v = Oracles(inst);
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) {
    scale[i] = GrandValue(v[i], m);
    if (!(scale[i] > 0.0)) scale[i] = 1.0;
  }
  cce.learning_rate.resize(n);
  cce.regret_bound.resize(n);
  for (int i = 0; i < n; ++i) {
    const double log_a = std::log(static_cast<double>(cce.actions[i].size()));
    const double eta = config.learning_rate > 0.0
                           ? config.learning_rate
                           : std::sqrt(std::max(log_a, 1e-12) / T);
    cce.learning_rate[i] = eta;
    // Hedge bound for gains in [-1, 1] plus an Azuma term for realized play.
    cce.regret_bound[i] =
        scale[i] * (log_a / (eta * T) + eta / 2.0 +
                    2.0 * std::sqrt(2.0 * std::log(1e6) / T));
  }
  const long every =
      config.trace_every > 0 ? config.trace_every : std::max(1L, T / 1000);

  std::mt19937_64 rng(SplitMix64(config.seed));
  std::vector<std::vector<double>> log_w(n);
  std::vector<std::vector<double>> cum(n);
  std::vector<std::vector<double>> prob(n);
  std::vector<std::vector<std::vector<double>>> expanded(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t a = cce.actions[i].size();
    log_w[i].assign(a, 0.0);
    cum[i].assign(a, 0.0);
    prob[i].assign(a, 0.0);
    for (const BundleBid& x : cce.actions[i]) expanded[i].push_back(x.Expand(m));
  }
  std::vector<double> realized(n, 0.0);
  double welfare_sum = 0.0;
  std::vector<int> played(n);
  std::vector<std::vector<double>> bids(n);
  std::vector<double> u;
  cce.history.reserve(T);
  cce.regret.assign(n, 0.0);

  for (long t = 0; t < T; ++t) {
    for (int i = 0; i < n; ++i) {
      const auto& lw = log_w[i];
      const double top = *std::max_element(lw.begin(), lw.end());
      double total = 0.0;
      for (std::size_t a = 0; a < lw.size(); ++a) {
        prob[i][a] = std::exp(lw[a] - top);
        total += prob[i][a];
      }
      const double r = Uniform01(rng) * total;
      double acc = 0.0;
      int pick = static_cast<int>(lw.size()) - 1;
      for (std::size_t a = 0; a < lw.size(); ++a) {
        acc += prob[i][a];
        if (r < acc) {
          pick = static_cast<int>(a);
          break;
        }
      }
      played[i] = pick;
      bids[i] = expanded[i][pick];
    }
    cce.history.push_back(played);

    for (int i = 0; i < n; ++i) {
      const Competition c = Compete(bids, i, m);
      const ActionSet& acts = cce.actions[i];
      u.assign(acts.size(), 0.0);
      for (std::size_t a = 0; a < acts.size(); ++a) {
        const Deal d = Settle(expanded[i][a], i, c, config.rule);
        u[a] = v[i](d.won) - d.payment;
        cum[i][a] += u[a];
        log_w[i][a] += cce.learning_rate[i] * u[a] / scale[i];
      }
      realized[i] += u[played[i]];
      welfare_sum += v[i](Settle(bids[i], i, c, config.rule).won);
    }

    if ((t + 1) % every == 0 || t + 1 == T) {
      TraceRow row;
      row.iteration = t + 1;
      row.avg_welfare = welfare_sum / (t + 1);
      for (int i = 0; i < n; ++i) {
        const double best = *std::max_element(cum[i].begin(), cum[i].end());
        row.avg_utility.push_back(realized[i] / (t + 1));
        row.regret.push_back((best - realized[i]) / (t + 1));
      }
      if (t + 1 == T) cce.regret = row.regret;
      cce.trace.push_back(std::move(row));
    }
  }
  return cce;
}

CceMetrics ComputeCceMetrics(const AuctionInstance& inst,
                             const EmpiricalCce& cce) {
  CceMetrics r;
  r.opt = OptimalWelfare(inst).value;
  const long T = static_cast<long>(cce.history.size());
  if (T == 0) Fail(ErrorCode::kInvalidInput, "empty history");
  double sum = 0.0;
  double sq = 0.0;
  double rev = 0.0;
  for (long t = 0; t < T; ++t) {
    const AuctionOutcome o = RunAuction(inst, cce.Profile(t, inst.m), cce.rule);
    sum += o.welfare;
    sq += o.welfare * o.welfare;
    rev += o.revenue;
  }
  r.expected_sw = sum / T;
  r.revenue = rev / T;
  const double var = std::max(0.0, sq / T - r.expected_sw * r.expected_sw);
  r.sw_std_err = std::sqrt(var / T);
  r.ratio = r.expected_sw > 0.0 ? r.opt / r.expected_sw
                                : std::numeric_limits<double>::infinity();
  return r;
}

double NeStrategy::Cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0 / k) return 1.0;
  return std::pow(k * t, 1.0 / ((k - 1) * (k - 1)));
}

double NeStrategy::Quantile(double u) const {
  return std::pow(u, (k - 1) * (k - 1)) / k;
}

double NeStrategy::Sample(int bidder, std::mt19937_64& rng) const {
  return bidders.at(bidder).analytic ? Quantile(Uniform01(rng)) : 0.0;
}

PoaLowerBound PoaLbInstance(int k, int planes) {
  if (k < 2) Fail(ErrorCode::kInvalidInput, "lower bound needs k >= 2");
  if (planes <= 0) planes = k;
  const std::vector<ItemSet> lines = ProjectivePlaneLines(k - 1);
  const int L = static_cast<int>(lines.size());
  if (planes * L > kMaxItems) {
    Fail(ErrorCode::kCapacity, std::to_string(planes) + " planes of " +
                                   std::to_string(L) + " points exceed " +
                                   std::to_string(kMaxItems) + " items");
  }
  PoaLowerBound lb;
  lb.k = k;
  lb.planes = planes;
  lb.lines = L;
  AuctionInstance& inst = lb.instance;
  inst.m = planes * L;
  lb.strategy.k = k;
  auto add = [&](ItemSet bundle, int rank, bool analytic) {
    Hypergraph h(inst.m);
    h.Set(bundle, 1.0);
    inst.bidders.emplace_back(MphRepresentation(inst.m, rank, {h}));
    lb.strategy.bidders.push_back({bundle, analytic});
  };
  for (int p = 0; p < planes; ++p) {
    for (ItemSet line : lines) {
      ItemSet shifted;
      for (int j : line.Items()) shifted = shifted.With(p * L + j);
      add(shifted, k, true);
    }
  }
  for (int point = 0; point < L; ++point) {
    ItemSet bundle;
    for (int p = 0; p < planes; ++p) bundle = bundle.With(p * L + point);
    add(bundle, planes, false);
  }
  inst.metadata.known_opt = L;
  inst.metadata.poa = static_cast<double>(L) / planes;
  inst.metadata.k = k;
  inst.metadata.construction = "poa_lb";
  inst.metadata.params["k"] = k;
  inst.metadata.params["planes"] = planes;
  return lb;
}

namespace {

struct Tally {
  std::vector<double> equal;
  std::vector<double> unequal;
  std::vector<double> aux;
};

}  // namespace

NeReport VerifyMixedNe(const PoaLowerBound& lb,
                       const NeVerifyOptions& options) {
  const int k = lb.k;
  const int L = lb.lines;
  const NeStrategy& s = lb.strategy;
  if (options.grid_points < 1 || options.samples < 1 ||
      options.welfare_samples < 2) {
    Fail(ErrorCode::kInvalidInput, "verification sizes must be positive");
  }
  NeReport rep;

  // Closed forms from the strategy CDF. Opponents on different items of a
  // line are distinct bidders, so item wins are independent.
  rep.aux_min_gap = std::numeric_limits<double>::infinity();
  rep.aux_abstains = true;
  for (int g = 1; g <= options.grid_points; ++g) {
    const double x = static_cast<double>(g) / options.grid_points / k;
    const double item = std::pow(s.Cdf(x), k - 1);
    const double u = std::pow(item, k) - k * x * item;
    rep.closed_form_max_abs = std::max(rep.closed_form_max_abs, std::abs(u));
    const double aux_item = std::pow(s.Cdf(x), k);
    const double value = std::pow(aux_item, lb.planes);
    const double payment = lb.planes * x * aux_item;
    if (g < options.grid_points) {
      rep.aux_min_gap = std::min(rep.aux_min_gap, payment - value);
      if (!(value < payment)) rep.aux_abstains = false;
    }
  }

  // Monte Carlo deviations of line 0 of plane 0 and of the auxiliary bidder
  // for point 0, against equilibrium play of everybody else.
  const std::vector<ItemSet> lines = ProjectivePlaneLines(k - 1);
  const std::vector<int> own = lines[0].Items();
  std::vector<std::vector<int>> rivals(own.size());
  for (std::size_t a = 0; a < own.size(); ++a) {
    for (int l = 1; l < L; ++l) {
      if (lines[l].Contains(own[a])) rivals[a].push_back(l);
    }
  }
  std::vector<int> through_zero;
  for (int l = 0; l < L; ++l) {
    if (lines[l].Contains(0)) through_zero.push_back(l);
  }
  constexpr int kDevGrid = 20;
  std::vector<double> equal_bids;
  for (int g = 1; g <= kDevGrid; ++g) {
    equal_bids.push_back(static_cast<double>(g) / kDevGrid / k);
  }
  std::vector<std::pair<double, double>> unequal_bids;
  for (int a = 1; a <= 5; ++a) {
    for (int b = 1; b <= 5; ++b) {
      if (a != b) unequal_bids.emplace_back(0.2 * a / k, 0.2 * b / k);
    }
  }

  constexpr int kChunks = 64;
  std::vector<Tally> tallies(kChunks);
  std::atomic<int> next{0};
  auto worker = [&]() {
    std::vector<double> plane_bids(static_cast<std::size_t>(lb.planes) * L);
    std::vector<double> high(own.size());
    std::vector<double> aux_high(lb.planes);
    for (int c = next++; c < kChunks; c = next++) {
      Tally& t = tallies[c];
      t.equal.assign(equal_bids.size(), 0.0);
      t.unequal.assign(unequal_bids.size(), 0.0);
      t.aux.assign(equal_bids.size(), 0.0);
      std::mt19937_64 rng(SplitMix64(options.seed * 1000003ULL + c));
      const long begin = options.samples * c / kChunks;
      const long end = options.samples * (c + 1) / kChunks;
      for (long r = begin; r < end; ++r) {
        for (double& x : plane_bids) x = s.Quantile(Uniform01(rng));
        for (std::size_t a = 0; a < own.size(); ++a) {
          high[a] = 0.0;
          for (int l : rivals[a]) high[a] = std::max(high[a], plane_bids[l]);
        }
        for (int p = 0; p < lb.planes; ++p) {
          aux_high[p] = 0.0;
          for (int l : through_zero) {
            aux_high[p] = std::max(aux_high[p], plane_bids[p * L + l]);
          }
        }
        // Line 0 of plane 0 is bidder 0 and wins every tie.
        for (std::size_t d = 0; d < equal_bids.size(); ++d) {
          const double x = equal_bids[d];
          int won = 0;
          for (double h : high) won += x >= h;
          t.equal[d] += (won == k ? 1.0 : 0.0) - won * x;
        }
        for (std::size_t d = 0; d < unequal_bids.size(); ++d) {
          const auto [x, y] = unequal_bids[d];
          int won = 0;
          double pay = 0.0;
          for (std::size_t a = 0; a < own.size(); ++a) {
            const double bid = a == 1 ? y : x;
            if (bid >= high[a]) {
              ++won;
              pay += bid;
            }
          }
          t.unequal[d] += (won == k ? 1.0 : 0.0) - pay;
        }
        // Auxiliary bidders come after every plane bidder and lose ties.
        for (std::size_t d = 0; d < equal_bids.size(); ++d) {
          const double x = equal_bids[d];
          int won = 0;
          for (double h : aux_high) won += x > h;
          t.aux[d] += (won == lb.planes ? 1.0 : 0.0) - won * x;
        }
      }
    }
  };
  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, kChunks);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  Tally total{std::vector<double>(equal_bids.size(), 0.0),
              std::vector<double>(unequal_bids.size(), 0.0),
              std::vector<double>(equal_bids.size(), 0.0)};
  for (const Tally& t : tallies) {
    for (std::size_t d = 0; d < t.equal.size(); ++d) total.equal[d] += t.equal[d];
    for (std::size_t d = 0; d < t.unequal.size(); ++d) {
      total.unequal[d] += t.unequal[d];
    }
    for (std::size_t d = 0; d < t.aux.size(); ++d) total.aux[d] += t.aux[d];
  }
  const double ns = static_cast<double>(options.samples);
  double worst = -std::numeric_limits<double>::infinity();
  auto note = [&](double value, const std::string& what) {
    if (value > worst) {
      worst = value;
      rep.worst_deviation = what;
    }
  };
  char buf[128];
  rep.mc_unequal_max = rep.mc_aux_max = -std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < equal_bids.size(); ++d) {
    const double u = total.equal[d] / ns;
    rep.mc_equal_max_abs = std::max(rep.mc_equal_max_abs, std::abs(u));
    std::snprintf(buf, sizeof(buf), "plane bidder equal bid %.4f: %.3g",
                  equal_bids[d], u);
    note(std::abs(u), buf);
  }
  for (std::size_t d = 0; d < unequal_bids.size(); ++d) {
    const double u = total.unequal[d] / ns;
    rep.mc_unequal_max = std::max(rep.mc_unequal_max, u);
    std::snprintf(buf, sizeof(buf), "plane bidder bids (%.4f, %.4f): %.3g",
                  unequal_bids[d].first, unequal_bids[d].second, u);
    note(u, buf);
  }
  for (std::size_t d = 0; d < equal_bids.size(); ++d) {
    const double u = total.aux[d] / ns;
    rep.mc_aux_max = std::max(rep.mc_aux_max, u);
    std::snprintf(buf, sizeof(buf), "auxiliary bid %.4f: %.3g", equal_bids[d],
                  u);
    note(u, buf);
  }

  // Equilibrium welfare by direct simulation of the auction.
  const AuctionInstance& inst = lb.instance;
  std::mt19937_64 rng(SplitMix64(options.seed ^ 0x77656c66617265ULL));
  double sum = 0.0;
  double sq = 0.0;
  BidProfile b;
  b.bids.assign(inst.n(), std::vector<double>(inst.m, 0.0));
  for (long r = 0; r < options.welfare_samples; ++r) {
    for (int i = 0; i < inst.n(); ++i) {
      const double x = s.Sample(i, rng);
      std::fill(b.bids[i].begin(), b.bids[i].end(), 0.0);
      for (int j : s.bidders[i].bundle.Items()) b.bids[i][j] = x;
    }
    const double w = RunAuction(inst, b, PaymentRule::kFirstPrice).welfare;
    sum += w;
    sq += w * w;
  }
  const double nw = static_cast<double>(options.welfare_samples);
  rep.welfare_mean = sum / nw;
  const double var =
      std::max(0.0, (sq - nw * rep.welfare_mean * rep.welfare_mean) / (nw - 1));
  rep.welfare_std_err = std::sqrt(var / nw);
  rep.opt = OptimalWelfare(inst).value;
  rep.measured_poa = rep.opt / rep.welfare_mean;
  rep.metadata_poa = inst.metadata.poa.value_or(0.0);

  const bool closed = rep.closed_form_max_abs <= options.closed_form_tol;
  const bool mc = rep.mc_equal_max_abs <= options.monte_carlo_tol &&
                  rep.mc_unequal_max <= options.monte_carlo_tol &&
                  rep.mc_aux_max <= options.monte_carlo_tol;
  const bool welfare = std::abs(rep.welfare_mean - lb.planes) <=
                       3.0 * rep.welfare_std_err + 1e-9;
  const bool poa = std::abs(rep.metadata_poa - rep.measured_poa) <=
                   1e-6 * rep.metadata_poa + 3.0 * rep.welfare_std_err;
  rep.passed = closed && rep.aux_abstains && mc && welfare && poa;
  return rep;
}

const char* DeviationName(Deviation d) {
  switch (d) {
    case Deviation::kPriceScale:
      return "price_scale";
    case Deviation::kSampleMax:
      return "sample_max";
    case Deviation::kRandomFirstPrice:
      return "random_first_price";
  }
  return "unknown";
}

std::optional<Deviation> ParseDeviation(const std::string& name) {
  for (Deviation d : {Deviation::kPriceScale, Deviation::kSampleMax,
                      Deviation::kRandomFirstPrice}) {
    if (name == DeviationName(d)) return d;
  }
  return std::nullopt;
}

SmoothnessReport SmoothnessCheck(const AuctionInstance& inst,
                                 const SmoothnessOptions& options) {
  ValidateInstance(inst);
  if (options.trials < 1) {
    Fail(ErrorCode::kInvalidInput, "trials must be positive");
  }
  if (options.deviation == Deviation::kRandomFirstPrice && inst.m != 1) {
    Fail(ErrorCode::kPrecondition,
         "random_first_price deviation needs a single item");
  }
  if (options.k < 1) Fail(ErrorCode::kInvalidInput, "k must be positive");
  const int n = inst.n();
  const int m = inst.m;
  const std::vector<ValueOracle> v = Oracles(inst);
  const WelfareResult opt = OptimalWelfare(inst);
  double top = 0.0;
  for (int i = 0; i < n; ++i) top = std::max(top, GrandValue(v[i], m));
  if (options.population != nullptr) {
    if (options.population->empty()) {
      Fail(ErrorCode::kInvalidInput, "empty profile population");
    }
    for (const BidProfile& b : *options.population) CheckProfile(inst, b);
  }

  std::mt19937_64 rng(SplitMix64(options.seed));
  auto draw = [&](std::mt19937_64& g) {
    if (options.population != nullptr) {
      return (*options.population)[UniformIndex(
          g, options.population->size())];
    }
    BidProfile b;
    b.bids.assign(n, std::vector<double>(m, 0.0));
    for (auto& row : b.bids) {
      for (double& x : row) x = Uniform01(g) * top;
    }
    return b;
  };
  auto item_prices = [&](const BidProfile& b) {
    std::vector<double> p(m, 0.0);
    for (const auto& row : b.bids) {
      for (int j = 0; j < m; ++j) p[j] = std::max(p[j], row[j]);
    }
    return p;
  };

  std::vector<double> mean_price(m, 0.0);
  if (options.deviation == Deviation::kPriceScale) {
    if (options.population != nullptr) {
      for (const BidProfile& b : *options.population) {
        const auto p = item_prices(b);
        for (int j = 0; j < m; ++j) mean_price[j] += p[j];
      }
      for (double& x : mean_price) x /= options.population->size();
    } else {
      std::mt19937_64 g(SplitMix64(options.seed + 0x9e37ULL));
      for (long t = 0; t < options.trials; ++t) {
        const auto p = item_prices(draw(g));
        for (int j = 0; j < m; ++j) mean_price[j] += p[j];
      }
      for (double& x : mean_price) x /= options.trials;
    }
  }

  SmoothnessReport rep;
  rep.trials = options.trials;
  rep.opt = opt.value;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double edge = 1.0 - std::exp(-1.0);
  double lhs_sum = 0.0;
  double lhs_sq = 0.0;
  double rhs_sum = 0.0;
  double rev_sum = 0.0;
  for (long t = 0; t < options.trials; ++t) {
    const BidProfile b = draw(rng);
    const AuctionOutcome o = RunAuction(inst, b, PaymentRule::kFirstPrice);
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
      const Competition c = Compete(b.bids, i, m);
      const ItemSet target = opt.allocation.bundles[i];
      if (options.deviation == Deviation::kRandomFirstPrice) {
        if (!target.empty()) {
          const double value = v[i](target);
          lhs += std::max(0.0, edge * value - std::max(c.high[0], 0.0));
          continue;
        }
      }
      std::vector<double> dev(m, 0.0);
      if (options.deviation == Deviation::kPriceScale) {
        for (int j : target.Items()) dev[j] = 2.0 * options.k * mean_price[j];
      } else if (options.deviation == Deviation::kSampleMax && !target.empty()) {
        for (int r = 0; r < 2 * options.k; ++r) {
          const auto p = item_prices(draw(rng));
          for (int j : target.Items()) dev[j] = std::max(dev[j], p[j]);
        }
        for (int j : target.Items()) dev[j] += 1e-12 * (1.0 + dev[j]);
      }
      const Deal d = Settle(dev, i, c, PaymentRule::kFirstPrice);
      lhs += v[i](d.won) - d.payment;
    }
    const double rhs = options.lambda * opt.value - options.mu * o.revenue;
    lhs_sum += lhs;
    lhs_sq += lhs * lhs;
    rhs_sum += rhs;
    rev_sum += o.revenue;
    rep.worst_margin = std::min(rep.worst_margin, lhs - rhs);
    if (lhs < rhs - 1e-9) ++rep.violations;
  }
  const double nt = static_cast<double>(options.trials);
  rep.mean_lhs = lhs_sum / nt;
  rep.mean_rhs = rhs_sum / nt;
  rep.mean_revenue = rev_sum / nt;
  rep.margin = rep.mean_lhs - rep.mean_rhs;
  const double var = std::max(0.0, lhs_sq / nt - rep.mean_lhs * rep.mean_lhs);
  rep.lhs_std_err = std::sqrt(var / nt);
  return rep;
}

}  // namespace mph
