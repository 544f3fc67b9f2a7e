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

#include "mph/welfare.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include <gmpxx.h>

#include "mph/error.h"
#include "mph/properties.h"
#include "mph/simplex.h"

namespace mph {
namespace {

using Bits = ItemSet::Bits;

constexpr double kTieTol = 1e-12;
constexpr double kReducedCostTol = 1e-9;

bool IsPrime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

struct Column {
  int bidder;
  ItemSet set;
  double value;
};

template <class T>
LpResult<T> SolveColumns(const std::vector<Column>& cols, int n, int m) {
  const int rows = n + m;
  std::vector<std::vector<T>> a(rows, std::vector<T>(cols.size(), T(0)));
  std::vector<T> b(rows, T(1));
  std::vector<T> c(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    a[cols[k].bidder][k] = T(1);
    for (int j : cols[k].set.Items()) a[n + j][k] = T(1);
    c[k] = T(cols[k].value);
  }
  return SolveLp(a, b, c);
}

// Bundles that beat every bundle obtained by dropping one item. A dominated
// column can always be replaced by the smaller bundle without loss.
void AddUndominated(const ValueOracle& v, int bidder, int m,
                    std::vector<Column>& cols) {
  if (const auto& sm = v.single_minded()) {
    cols.push_back({bidder, sm->bundle, sm->value});
    return;
  }
  const Bits n = Bits{1} << m;
  for (Bits s = 1; s < n; ++s) {
    const ItemSet set(s);
    const double value = v(set);
    if (value <= 0.0) continue;
    bool dominated = false;
    for (int j : set.Items()) {
      if (value <= v(set.Without(j))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) cols.push_back({bidder, set, value});
  }
}

FractionalSolution Extract(const LpResult<double>& lp,
                           const std::vector<Column>& cols) {
  FractionalSolution sol;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const double x = lp.x[k];
    if (x > kTieTol) sol.entries.push_back({cols[k].bidder, cols[k].set, x});
  }
  std::sort(sol.entries.begin(), sol.entries.end(),
            [](const FractionalEntry& a, const FractionalEntry& b) {
              return std::tie(a.bidder, a.set) < std::tie(b.bidder, b.set);
            });
  sol.objective = lp.objective;
  sol.iterations = lp.iterations;
  sol.used_bland = lp.used_bland;
  sol.columns = static_cast<int>(cols.size());
  return sol;
}

void RequireOptimal(LpStatus status, const char* what) {
  if (status != LpStatus::kOptimal) {
    Fail(ErrorCode::kSolver,
         std::string(what) + " ended with status " + LpStatusName(status));
  }
}

// Entries grouped per bidder with cumulative weights.
struct Tentative {
  std::vector<std::vector<std::pair<double, ItemSet>>> per_bidder;
};

Tentative Prepare(const FractionalSolution& sol, const AuctionInstance& inst) {
  Tentative t;
  t.per_bidder.resize(inst.n());
  for (const FractionalEntry& e : sol.entries) {
    if (e.bidder < 0 || e.bidder >= inst.n() || !e.set.FitsIn(inst.m) ||
        !(e.x >= 0.0)) {
      Fail(ErrorCode::kInvalidInput, "fractional entry out of range");
    }
    auto& list = t.per_bidder[e.bidder];
    const double prev = list.empty() ? 0.0 : list.back().first;
    list.emplace_back(prev + e.x, e.set);
  }
  for (const auto& list : t.per_bidder) {
    if (!list.empty() && list.back().first > 1.0 + 1e-7) {
      Fail(ErrorCode::kInvalidInput, "bidder weights exceed 1");
    }
  }
  return t;
}

Allocation RoundOnce(const Tentative& t, std::uint64_t seed) {
  const int n = static_cast<int>(t.per_bidder.size());
  std::mt19937_64 rng(seed);
  std::vector<ItemSet> wanted(n);
  for (int i = 0; i < n; ++i) {
    const double u = Uniform01(rng);
    for (const auto& [cum, set] : t.per_bidder[i]) {
      if (u < cum) {
        wanted[i] = set;
        break;
      }
    }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[UniformIndex(rng, i + 1)]);
  }
  Allocation a;
  a.bundles.assign(n, ItemSet());
  ItemSet taken;
  for (int i : order) {
    a.bundles[i] = wanted[i] - taken;
    taken = taken | a.bundles[i];
  }
  return a;
}

WelfareResult PackSingleMinded(const AuctionInstance& inst,
                               const std::vector<SingleMinded>& sm) {
  const int n = inst.n();
  WelfareResult best;
  best.value = -1.0;
  std::vector<bool> chosen(n, false);
  std::vector<bool> best_chosen;
  // Skipping a bidder is tried before serving it, so the optimum kept is the
  // lexicographically smallest one.
  std::function<void(int, ItemSet, double)> dfs = [&](int i, ItemSet used,
                                                      double cur) {
    double bound = cur;
    for (int r = i; r < n; ++r) {
      if (!sm[r].bundle.Intersects(used)) bound += sm[r].value;
    }
    if (bound <= best.value + kTieTol) return;
    if (i == n) {
      best.value = cur;
      best_chosen = chosen;
      return;
    }
    dfs(i + 1, used, cur);
    if (!sm[i].bundle.Intersects(used)) {
      chosen[i] = true;
      dfs(i + 1, used | sm[i].bundle, cur + sm[i].value);
      chosen[i] = false;
    }
  };
  dfs(0, ItemSet(), 0.0);
  best.allocation.bundles.assign(n, ItemSet());
  for (int i = 0; i < n; ++i) {
    if (best_chosen[i]) best.allocation.bundles[i] = sm[i].bundle;
  }
  return best;
}

WelfareResult WelfareDp(const AuctionInstance& inst) {
  const int n = inst.n();
  const int m = inst.m;
  const Bits full = ItemSet::Full(m).bits();
  const std::size_t size = std::size_t{1} << m;
  std::vector<ValueOracle> v;
  v.reserve(n);
  for (const Valuation& b : inst.bidders) v.emplace_back(b);
  // best[i][a]: welfare of bidders i..n-1 restricted to items a.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(size, 0.0));
  for (int i = n - 1; i >= 0; --i) {
    for (Bits a = 0; a <= full; ++a) {
      double top = -std::numeric_limits<double>::infinity();
      Bits s = 0;
      while (true) {
        const double val = v[i](ItemSet(s)) + best[i + 1][a & ~s];
        if (val > top) top = val;
        if (s == a) break;
        s = (s - a) & a;
      }
      best[i][a] = top;
    }
  }
  WelfareResult r;
  r.value = best[0][full];
  r.allocation.bundles.assign(n, ItemSet());
  Bits avail = full;
  for (int i = 0; i < n; ++i) {
    const double target = best[i][avail];
    Bits s = 0;
    while (true) {
      const double val = v[i](ItemSet(s)) + best[i + 1][avail & ~s];
      if (val >= target - kTieTol * std::max(1.0, std::abs(target))) break;
      s = (s - avail) & avail;
    }
    r.allocation.bundles[i] = ItemSet(s);
    avail &= ~s;
  }
  return r;
}

}  // namespace

void ValidateInstance(const AuctionInstance& inst) {
  if (inst.m < 1 || inst.m > kMaxItems) {
    Fail(ErrorCode::kInvalidInput,
         "instance item count must lie in [1, " + std::to_string(kMaxItems) +
             "]");
  }
  if (inst.bidders.empty()) {
    Fail(ErrorCode::kInvalidInput, "instance has no bidders");
  }
  for (std::size_t i = 0; i < inst.bidders.size(); ++i) {
    if (ItemCount(inst.bidders[i]) != inst.m) {
      Fail(ErrorCode::kInvalidInput,
           "bidder " + std::to_string(i) + " is defined on " +
               std::to_string(ItemCount(inst.bidders[i])) + " items, not " +
               std::to_string(inst.m));
    }
  }
}

bool IsFeasible(const Allocation& a, int m) {
  ItemSet taken;
  for (ItemSet s : a.bundles) {
    if (!s.FitsIn(m) || s.Intersects(taken)) return false;
    taken = taken | s;
  }
  return true;
}

double SocialWelfare(const AuctionInstance& inst, const Allocation& a) {
  if (static_cast<int>(a.bundles.size()) != inst.n()) {
    Fail(ErrorCode::kInvalidInput, "allocation size differs from bidder count");
  }
  double sw = 0.0;
  for (int i = 0; i < inst.n(); ++i) sw += Eval(inst.bidders[i], a.bundles[i]);
  return sw;
}

ValueOracle::ValueOracle(const Valuation& v)
    : v_(&v), sm_(AsSingleMinded(v)) {
  if (!sm_ && ItemCount(v) <= kMaxTableItems) table_ = ToExplicit(v).table();
}

double ValueOracle::operator()(ItemSet s) const {
  if (sm_) return sm_->bundle.IsSubsetOf(s) ? sm_->value : 0.0;
  if (!table_.empty()) return table_[s.bits()];
  return Eval(*v_, s);
}

WelfareResult OptimalWelfare(const AuctionInstance& inst) {
  ValidateInstance(inst);
  std::vector<SingleMinded> sm;
  for (const Valuation& b : inst.bidders) {
    const auto s = AsSingleMinded(b);
    if (!s) break;
    sm.push_back(*s);
  }
  if (static_cast<int>(sm.size()) == inst.n()) return PackSingleMinded(inst, sm);
  const double work = inst.n() * std::pow(3.0, inst.m);
  if (inst.m > kMaxWelfareDpItems || work > kMaxWelfareDpWork) {
    Fail(ErrorCode::kCapacity,
         "exact welfare needs n * 3^m <= 5e8 and m <= " +
             std::to_string(kMaxWelfareDpItems) + " unless all bidders are "
             "single-minded");
  }
  return WelfareDp(inst);
}

FractionalSolution SolveConfigLp(const AuctionInstance& inst,
                                 const ConfigLpOptions& options) {
  ValidateInstance(inst);
  const int n = inst.n();
  const int m = inst.m;
  std::vector<ValueOracle> v;
  v.reserve(n);
  for (const Valuation& b : inst.bidders) v.emplace_back(b);

  std::vector<Column> cols;
  FractionalSolution sol;
  if (options.mode == ConfigLpMode::kExplicit) {
    bool all_single = true;
    for (const auto& o : v) all_single = all_single && o.single_minded();
    if (!all_single &&
        static_cast<double>(n) * std::ldexp(1.0, m) > kMaxExplicitLpColumns) {
      Fail(ErrorCode::kCapacity,
           "explicit configuration LP needs n * 2^m <= 1e6");
    }
    for (int i = 0; i < n; ++i) AddUndominated(v[i], i, m, cols);
    const LpResult<double> lp = SolveColumns<double>(cols, n, m);
    RequireOptimal(lp.status, "configuration LP");
    sol = Extract(lp, cols);
  } else {
    std::vector<std::optional<ExplicitValuation>> tables(n);
    for (int i = 0; i < n; ++i) {
      if (!v[i].single_minded()) {
        if (m > kMaxExplicitItems) {
          Fail(ErrorCode::kCapacity, "demand queries need m <= " +
                                         std::to_string(kMaxExplicitItems));
        }
        tables[i] = ToExplicit(inst.bidders[i]);
      }
    }
    std::set<std::pair<int, ItemSet>> present;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        const double value = v[i](ItemSet::Singleton(j));
        if (value > 0.0) {
          cols.push_back({i, ItemSet::Singleton(j), value});
          present.insert({i, ItemSet::Singleton(j)});
        }
      }
    }
    long iterations = 0;
    bool bland = false;
    int rounds = 0;
    LpResult<double> lp;
    while (true) {
      if (++rounds > options.max_pricing_rounds) {
        Fail(ErrorCode::kSolver, "column generation did not converge");
      }
      lp = SolveColumns<double>(cols, n, m);
      RequireOptimal(lp.status, "restricted master");
      iterations += lp.iterations;
      bland = bland || lp.used_bland;
      std::vector<double> prices(lp.duals.begin() + n, lp.duals.end());
      bool added = false;
      for (int i = 0; i < n; ++i) {
        const ItemSet s = tables[i] ? DemandQuery(*tables[i], prices)
                                    : DemandQuery(inst.bidders[i], prices);
        double cost = 0.0;
        for (int j : s.Items()) cost += prices[j];
        const double value = v[i](s);
        if (value - cost - lp.duals[i] > kReducedCostTol &&
            present.insert({i, s}).second) {
          cols.push_back({i, s, value});
          added = true;
        }
      }
      if (!added) break;
    }
    sol = Extract(lp, cols);
    sol.iterations = iterations;
    sol.used_bland = bland;
    sol.pricing_rounds = rounds;
  }

  if (options.exact_verify) {
    const LpResult<mpq_class> exact = SolveColumns<mpq_class>(cols, n, m);
    if (exact.status != LpStatus::kOptimal) {
      Fail(ErrorCode::kVerification, "rational re-solve did not reach optimum");
    }
    sol.exact_objective = exact.objective.get_str();
    sol.exact_value = exact.objective.get_d();
    if (std::abs(*sol.exact_value - sol.objective) >
        1e-6 * std::max(1.0, std::abs(sol.objective))) {
      Fail(ErrorCode::kVerification,
           "floating and rational LP optima disagree");
    }
  }
  return sol;
}

bool IsFeasibleFractional(const FractionalSolution& sol,
                          const AuctionInstance& inst, double tol) {
  std::vector<double> bidder(inst.n(), 0.0);
  std::vector<double> item(inst.m, 0.0);
  double objective = 0.0;
  for (const FractionalEntry& e : sol.entries) {
    if (e.bidder < 0 || e.bidder >= inst.n() || !e.set.FitsIn(inst.m)) {
      return false;
    }
    if (e.x < -tol || e.x > 1.0 + tol) return false;
    bidder[e.bidder] += e.x;
    for (int j : e.set.Items()) item[j] += e.x;
    objective += e.x * Eval(inst.bidders[e.bidder], e.set);
  }
  for (double s : bidder) {
    if (s > 1.0 + tol) return false;
  }
  for (double s : item) {
    if (s > 1.0 + tol) return false;
  }
  return std::abs(objective - sol.objective) <=
         1e-6 * std::max(1.0, std::abs(sol.objective));
}

Allocation RoundPermutation(const FractionalSolution& sol,
                            const AuctionInstance& inst, std::uint64_t seed) {
  ValidateInstance(inst);
  return RoundOnce(Prepare(sol, inst), seed);
}

std::string RoundingStats::CsvHeader() const {
  return "trials,mean_welfare,std_err,ratio_to_lp,lp_objective";
}

std::string RoundingStats::CsvRecord() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g", trials,
                mean_welfare, std_err, ratio_to_lp, lp_objective);
  return buf;
}

RoundingStats EstimateRoundedWelfare(const FractionalSolution& sol,
                                     const AuctionInstance& inst, int trials,
                                     std::uint64_t seed, int threads) {
  ValidateInstance(inst);
  if (trials < 1) Fail(ErrorCode::kInvalidInput, "trials must be positive");
  const Tentative t = Prepare(sol, inst);
  std::vector<ValueOracle> v;
  v.reserve(inst.n());
  for (const Valuation& b : inst.bidders) v.emplace_back(b);

  std::vector<double> welfare(trials);
  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const Allocation a = RoundOnce(t, SplitMix64(seed + k));
      double sw = 0.0;
      for (int i = 0; i < inst.n(); ++i) sw += v[i](a.bundles[i]);
      welfare[k] = sw;
    }
  };
  if (threads <= 0) {
    threads = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, trials);
  if (threads == 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      const int begin = static_cast<int>(static_cast<long>(trials) * w / threads);
      const int end =
          static_cast<int>(static_cast<long>(trials) * (w + 1) / threads);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  RoundingStats r;
  r.trials = trials;
  r.lp_objective = sol.objective;
  double sum = 0.0;
  for (double w : welfare) sum += w;
  r.mean_welfare = sum / trials;
  double ss = 0.0;
  for (double w : welfare) ss += (w - r.mean_welfare) * (w - r.mean_welfare);
  const double sd = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
  r.std_err = sd / std::sqrt(static_cast<double>(trials));
  r.ratio_to_lp = sol.objective > 0.0 ? r.mean_welfare / sol.objective : 1.0;
  return r;
}

std::vector<ItemSet> ProjectivePlaneLines(int q) {
  if (q < 1) Fail(ErrorCode::kInvalidInput, "plane order must be positive");
  if (q == 1) {
    return {ItemSet::Of({0, 1}), ItemSet::Of({1, 2}), ItemSet::Of({0, 2})};
  }
  if (!IsPrime(q)) {
    Fail(ErrorCode::kUnsupported,
         "plane order " + std::to_string(q) + " is not prime");
  }
  if (q * q + q + 1 > kMaxItems) {
    Fail(ErrorCode::kCapacity, "plane of order " + std::to_string(q) +
                                   " exceeds " + std::to_string(kMaxItems) +
                                   " items");
  }
  // Points of PG(2, q) with first nonzero coordinate 1.
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  }
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  std::vector<ItemSet> lines;
  for (const auto& l : pts) {
    ItemSet line;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const int dot = l[0] * pts[p][0] + l[1] * pts[p][1] + l[2] * pts[p][2];
      if (dot % q == 0) line = line.With(static_cast<int>(p));
    }
    lines.push_back(line);
  }
  return lines;
}

AuctionInstance IntegralityGapInstance(int k) {
  if (k < 2) Fail(ErrorCode::kInvalidInput, "gap instance needs k >= 2");
  const std::vector<ItemSet> lines = ProjectivePlaneLines(k - 1);
  AuctionInstance inst;
  inst.m = (k - 1) * (k - 1) + k;
  for (ItemSet line : lines) {
    Hypergraph h(inst.m);
    h.Set(line, 1.0);
    inst.bidders.emplace_back(MphRepresentation(inst.m, k, {h}));
  }
  const double lp = k - 1 + 1.0 / k;
  inst.metadata.known_opt = 1.0;
  inst.metadata.known_lp = lp;
  inst.metadata.known_gap = lp;
  inst.metadata.k = k;
  inst.metadata.construction = "pp_singleminded";
  inst.metadata.params["k"] = k;
  return inst;
}

}  // namespace mph
