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


// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mph/auction.h"
#include "mph/error.h"
#include "mph/instances.h"
#include "mph/ple.h"
#include "mph/properties.h"
#include "mph/random.h"
#include "mph/valuation.h"
#include "mph/welfare.h"

namespace mph {
namespace {

// Tolerances and budgets.
constexpr double kGapTol = 1e-6;
constexpr double kDualTol = 1e-7;
constexpr double kNeClosedFormTol = 1e-6;
constexpr double kNeMonteCarloTol = 1e-2;
constexpr double kSmoothTol = 1e-9;
constexpr double kRegretFraction = 0.05;
constexpr double kSigmas = 3.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Criterion {
 public:
  explicit Criterion(Outcome& out) : out_(out) {}

  void Check(bool condition, const std::string& what) {
    if (!condition) {
      out_.ok = false;
      if (failures_++ < 3) out_.detail += (out_.detail.empty() ? "" : "; ") + what;
    }
  }

  void Note(const std::string& text) {
    if (out_.ok) out_.detail += (out_.detail.empty() ? "" : "; ") + text;
  }

 private:
  Outcome& out_;
  int failures_ = 0;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

Valuation AsValuation(Generated g) { return std::get<Valuation>(std::move(g)); }

AuctionInstance AsInstance(Generated g) {
  return std::get<AuctionInstance>(std::move(g));
}

ItemSet RandomEdge(std::mt19937_64& rng, int m, int max_size) {
  const int size = 1 + static_cast<int>(UniformIndex(rng, max_size));
  ItemSet s;
  while (s.size() < size) s = s.With(static_cast<int>(UniformIndex(rng, m)));
  return s;
}

ExplicitValuation RepairMonotone(Hypergraph h) {
  const int m = h.m();
  const ExplicitValuation f = FromHypergraph(h);
  for (int j = 0; j < m; ++j) {
    double worst = 0.0;
    for (ItemSet::Bits s = 0; s < f.table().size(); ++s) {
      if ((s >> j) & 1u) continue;
      worst = std::min(worst, f(ItemSet(s).With(j)) - f(ItemSet(s)));
    }
    if (worst < 0.0) h.Add(ItemSet::Singleton(j), -worst);
  }
  return FromHypergraph(h);
}

// ---------------------------------------------------------------------------

Outcome IntegralityGap() {
  Outcome out;
  Criterion c(out);
  for (int k = 2; k <= 4; ++k) {
    const auto start = std::chrono::steady_clock::now();
    const AuctionInstance inst = IntegralityGapInstance(k);
    const double opt = OptimalWelfare(inst).value;
    const double lp = SolveConfigLp(inst).objective;
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const double want = k - 1 + 1.0 / k;
    c.Check(std::abs(opt - 1.0) <= kGapTol, Fmt("k=%g opt=%g", k, opt));
    c.Check(std::abs(lp - want) <= kGapTol, Fmt("k=%g lp=%.9g want %.9g", k, lp, want));
    c.Check(secs < 5.0, Fmt("k=%g took %.2fs", k, secs));
    c.Note(Fmt("k=%g lp=%.9g", k, lp));
  }
  return out;
}

Outcome SymmetricTightLevels() {
  Outcome out;
  Criterion c(out);
  const auto s3 = std::get<SymmetricValuation>(AsValuation(Gen("sym3tight")));
  const auto s4 = std::get<SymmetricValuation>(AsValuation(Gen("sym4tight")));
  c.Check(s3.At(6) == 11.0 && s3.At(5) == 5.0, "sym3tight anchors");
  c.Check(s4.At(12) == 385.0 && s4.At(11) == 220.0, "sym4tight anchors");
  const int l3 = SymmetricMphLevel(s3);
  const int l4 = SymmetricMphLevel(s4);
  c.Check(l3 == 4, Fmt("sym3tight level %g", l3));
  c.Check(l4 == 6, Fmt("sym4tight level %g", l4));
  c.Note(Fmt("levels %g and %g", l3, l4));
  return out;
}

Outcome SymmetricDuals() {
  Outcome out;
  Criterion c(out);
  double worst = 0.0;
  for (int m = 10; m <= 40; ++m) {
    // Rank 3: the closed form is a feasible dual; the optimum may be larger.
    const double z3 = (m - 4.0) / m;
    const DualFeasibility d3 = SymmetricDualAtZ(m, 3, z3);
    c.Check(d3.feasible && d3.residual <= kDualTol,
            Fmt("r=3 m=%g infeasible at z=%g (residual %g)", m, z3, d3.residual));
    const SymmetricLpCertificate c3 = SymmetricWorstcaseLp(m, 3);
    c.Check(c3.dual_z >= z3 - kDualTol, Fmt("r=3 m=%g optimum %g below %g", m, c3.dual_z, z3));
    worst = std::max(worst, d3.residual);

    const double z4 = m % 2 == 0 ? (m - 4.0) / (m + 2.0)
                                 : (m - 2.0) * (m - 3.0) / (m * (m + 1.0));
    const DualFeasibility d4 = SymmetricDualAtZ(m, 4, z4);
    c.Check(d4.feasible && d4.residual <= kDualTol,
            Fmt("r=4 m=%g infeasible at z=%g", m, z4));
    const SymmetricLpCertificate c4 = SymmetricWorstcaseLp(m, 4);
    c.Check(std::abs(c4.dual_z - z4) <= kDualTol,
            Fmt("r=4 m=%g optimum %.9g vs %.9g", m, c4.dual_z, z4));
    worst = std::max({worst, d4.residual, std::abs(c4.dual_z - z4)});
  }
  c.Note(Fmt("m=10..40, max deviation %.2g", worst));
  return out;
}

Outcome RoundingGuarantee() {
  Outcome out;
  Criterion c(out);
  double worst_ratio = 1e9;
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + i % 3;
    const int m = std::max(k, 3 + i % 6);
    const int n = 2 + i % 3;
    const AuctionInstance inst = AsInstance(Gen(
        "rand_mph_auction", {{"m", m}, {"n", n}, {"k", k}, {"seed", 1000 + i}}));
    const FractionalSolution sol = SolveConfigLp(inst);
    const RoundingStats s = EstimateRoundedWelfare(sol, inst, 20000, 77 + i);
    const double floor = sol.objective / (k + 1) - kSigmas * s.std_err;
    c.Check(s.mean_welfare >= floor,
            Fmt("instance %g: mean %g < %g", i, s.mean_welfare, floor));
    worst_ratio = std::min(worst_ratio, s.ratio_to_lp * (k + 1));
  }
  c.Note(Fmt("50 instances, min (k+1)*mean/LP = %.3f", worst_ratio));
  return out;
}

Outcome PleOracleEquivalence() {
  Outcome out;
  Criterion c(out);
  std::mt19937_64 rng(SplitMix64(5));
  int agree = 0;
  int witnesses = 0;
  auto compare = [&](const char* who, const ExplicitValuation& f,
                     const PleWitness& w) {
    const bool valid = ValidatePle(f, w).valid;
    const bool exists = PleMaxLp(f, w.target_set, w.k).certified;
    witnesses += valid;
    if (valid == exists) {
      ++agree;
    } else {
      c.Check(false, std::string(who) + " disagrees with the LP on " +
                         w.target_set.ToString());
    }
  };
  auto target = [&](int m) {
    ItemSet s = RandomEdge(rng, m, m);
    return s.size() < 2 ? ItemSet::Full(m) : s;
  };
  auto bumped = [&](Hypergraph h) {
    const ExplicitValuation f = RepairMonotone(std::move(h));
    return f;
  };
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 5;
    Hypergraph h(m);
    for (int e = 0; e < m + 2; ++e) h.Add(RandomEdge(rng, m, 2), Uniform01(rng));
    for (int e = 0; e < 3; ++e) h.Add(RandomEdge(rng, m, m), -Uniform01(rng));
    const ExplicitValuation f = bumped(h);
    compare("ple2_flow", f, Ple2Flow(f, target(m)));
  }
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 5;
    const int r = 1 + t % 3;
    Hypergraph h(m);
    for (int e = 0; e < m + 2; ++e) h.Add(RandomEdge(rng, m, r), Uniform01(rng));
    // A nested chain of negative edges is laminar.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    ItemSet chain;
    for (int j = 0; j < m; ++j) {
      chain = chain.With(order[j]);
      if (chain.size() >= 2 && Uniform01(rng) < 0.5) {
        h.Add(chain, -0.3 * Uniform01(rng));
      }
    }
    const ExplicitValuation f = bumped(h);
    compare("ple_laminar", f, PleLaminar(f, target(m)));
  }
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 5;
    Hypergraph h(m);
    for (int j = 0; j < m; ++j) h.Add(ItemSet::Singleton(j), Uniform01(rng));
    for (int e = 0; e < m; ++e) {
      ItemSet s = RandomEdge(rng, m, m);
      if (s.size() >= 2) h.Add(s, -0.5 * Uniform01(rng));
    }
    const ExplicitValuation f = bumped(h);
    compare("ple1_matching", f, Ple1Matching(f, target(m)));
  }
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 5;
    Hypergraph h(m);
    for (int e = 0; e < 2 * m; ++e) {
      h.Add(RandomEdge(rng, m, 3), 2.0 * Uniform01(rng) - 1.0);
    }
    const ExplicitValuation f = bumped(h);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    compare("supermodular_ple", f, SupermodularPle(f, order, target(m)));
  }
  for (int t = 0; t < 40; ++t) {
    const int m = 3 + t % 5;
    const int r = 1 + static_cast<int>(UniformIndex(rng, m));
    const auto s = std::get<SymmetricValuation>(
        AsValuation(Gen("rand_sym", {{"m", m},
                                     {"r", std::min(m, 2 + t % 3)},
                                     {"seed", 300 + t}})));
    const SymmetricPleWitness w = CanonicalSymmetricPle(s, r);
    const ExplicitValuation f = ToExplicit(s);
    const bool exists = PleMaxLp(f, ItemSet::Full(m), r).certified;
    const bool valid = ValidatePle(f, w.Materialize()).valid;
    c.Check(valid == w.valid, "canonical validity flag disagrees with check");
    witnesses += valid;
    if (valid == exists) {
      ++agree;
    } else {
      c.Check(false, Fmt("canonical m=%g r=%g disagrees with the LP", m, r));
    }
  }
  c.Check(agree == 200, Fmt("%g of 200 agree", agree));
  c.Note(Fmt("200 instances, %g agreements, %g valid witnesses", agree, witnesses));
  return out;
}

Outcome HierarchyIdentities() {
  Outcome out;
  Criterion c(out);
  const ExplicitValuation f1 = ToExplicit(AsValuation(Gen("f1", {{"m", 5}})));
  const ExplicitValuation f2 = ToExplicit(AsValuation(Gen("f2", {{"m", 5}})));
  const ExplicitValuation flat2 = ToExplicit(AsValuation(Gen("flat2", {{"m", 4}})));
  const ExplicitValuation cap = ToExplicit(AsValuation(Gen("cap", {{"m", 6}})));
  c.Check(MphLevel(f1).level == 1, "mph_level(f1) != 1");
  c.Check(MphLevel(f2).level == 2, "mph_level(f2) != 2");
  c.Check(MphLevel(flat2).level == 2, "mph_level(flat2) != 2");
  c.Check(CheckProperties(f1).submodular && SupermodularDegree(f1).degree == 0,
          "degree of f1");
  c.Check(CheckProperties(cap).submodular && SupermodularDegree(cap).degree == 0,
          "degree of cap");
  for (int m = 1; m <= 8; ++m) {
    const ExplicitValuation f = ToExplicit(AsValuation(Gen("f1", {{"m", m}})));
    c.Check(ToHypergraph(f).ranks().rank == m, Fmt("rank of f1 on m=%g", m));
  }
  c.Note("levels 1, 2, 2; degree 0; rank(f1) = m for m = 1..8");
  return out;
}

Outcome PoaLowerBoundCheck() {
  Outcome out;
  Criterion c(out);
  const PoaLowerBound lb = PoaLbInstance(3);
  NeVerifyOptions options;
  options.grid_points = 100;
  options.samples = 1000000;
  options.closed_form_tol = kNeClosedFormTol;
  options.monte_carlo_tol = kNeMonteCarloTol;
  const NeReport r = VerifyMixedNe(lb, options);
  c.Check(r.closed_form_max_abs <= kNeClosedFormTol,
          Fmt("closed form %g", r.closed_form_max_abs));
  c.Check(r.mc_equal_max_abs <= kNeMonteCarloTol,
          Fmt("monte carlo equal bids %g", r.mc_equal_max_abs));
  c.Check(r.mc_unequal_max <= kNeMonteCarloTol,
          Fmt("monte carlo unequal bids %g", r.mc_unequal_max));
  c.Check(r.mc_aux_max <= kNeMonteCarloTol, Fmt("auxiliary gain %g", r.mc_aux_max));
  c.Check(std::abs(r.welfare_mean - 3.0) <= kSigmas * r.welfare_std_err,
          Fmt("welfare %g +- %g", r.welfare_mean, r.welfare_std_err));
  c.Check(std::abs(r.metadata_poa - 7.0 / 3.0) <= 1e-12,
          Fmt("metadata poa %g", r.metadata_poa));
  c.Check(std::abs(r.opt / 3.0 - r.metadata_poa) <= 1e-12, "opt / k != poa");
  c.Check(r.passed, "verifier reported failure");
  c.Note(Fmt("closed form %.1e, MC %.1e, welfare %.4f, poa %.4f",
             r.closed_form_max_abs,
             std::max({r.mc_equal_max_abs, r.mc_unequal_max, r.mc_aux_max}),
             r.welfare_mean, r.measured_poa));
  return out;
}

Outcome CceWelfareBound() {
  Outcome out;
  Criterion c(out);
  int strong = 0;
  double worst_regret = 0.0;
  double worst_ratio = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + i % 2;
    const int m = 4 + i % 3;
    const int n = 2 + i % 2;
    const AuctionInstance inst = AsInstance(Gen(
        "rand_mph_auction", {{"m", m}, {"n", n}, {"k", k}, {"seed", 2000 + i}}));
    LearnConfig config;
    config.iterations = 100000;
    config.seed = 500 + i;
    const EmpiricalCce cce = NoRegretLearn(inst, config);
    const CceMetrics mt = ComputeCceMetrics(inst, cce);
    const double sigma = kSigmas * mt.sw_std_err;
    c.Check(mt.expected_sw >= mt.opt / (4.0 * k) - sigma,
            Fmt("instance %g: sw %g below opt/4k", i, mt.expected_sw));
    if (mt.expected_sw >= mt.opt / (2.0 * k) - sigma) ++strong;
    const double regret = *std::max_element(cce.regret.begin(), cce.regret.end());
    c.Check(regret <= kRegretFraction * mt.opt,
            Fmt("instance %g: regret %g > 0.05 opt", i, regret));
    worst_regret = std::max(worst_regret, regret / mt.opt);
    worst_ratio = std::max(worst_ratio, mt.ratio);
  }
  c.Check(strong >= 18, Fmt("only %g of 20 meet opt/2k", strong));
  c.Note(Fmt("%g/20 meet opt/2k, worst opt/sw %.3f, worst regret/opt %.4f",
             strong, worst_ratio, worst_regret));
  return out;
}

Outcome SmoothnessSpotCheck() {
  Outcome out;
  Criterion c(out);
  AuctionInstance inst;
  inst.m = 1;
  for (double v : {1.0, 0.8, 0.55, 0.3}) {
    inst.bidders.emplace_back(ExplicitValuation(1, {0.0, v}));
  }
  SmoothnessOptions options;
  options.lambda = 1.0 - std::exp(-1.0);
  options.mu = 1.0;
  options.deviation = Deviation::kRandomFirstPrice;
  options.trials = 100000;
  options.seed = 9;
  const SmoothnessReport r = SmoothnessCheck(inst, options);
  c.Check(r.trials == 100000, "wrong profile count");
  c.Check(r.violations == 0, Fmt("%g violations", r.violations));
  c.Check(r.worst_margin >= -kSmoothTol, Fmt("worst margin %g", r.worst_margin));
  c.Note(Fmt("1e5 profiles, worst margin %.3g", r.worst_margin));
  return out;
}

Outcome DefinitionEquivalence() {
  Outcome out;
  Criterion c(out);
  std::mt19937_64 rng(SplitMix64(11));
  int compared = 0;
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 5;
    Hypergraph h(m);
    for (int e = 0; e < 2 * m; ++e) {
      h.Add(RandomEdge(rng, m, m), 2.0 * Uniform01(rng) - 1.0);
    }
    const ExplicitValuation f = RepairMonotone(h);
    const std::optional<int> level = MphLevel(f).level;
    c.Check(level.has_value(), Fmt("instance %g has no level", t));
    for (int k = 1; k <= m; ++k) {
      const bool frac = KFracSubadditiveCheck(f, k);
      c.Check(frac == (level && *level <= k),
              Fmt("instance %g k=%g: kfrac %g level %g", t, k, frac, level.value_or(-1)));
      ++compared;
    }
  }
  c.Note(Fmt("100 instances, %g (f, k) pairs", compared));
  return out;
}

Outcome MarkovBound() {
  Outcome out;
  Criterion c(out);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int r = 2 + i % 3;
    const int m = 10 + (7 * i) % 51;
    const auto s = std::get<SymmetricValuation>(
        AsValuation(Gen("rand_sym", {{"m", m}, {"r", r}, {"seed", 4000 + i}})));
    const int level = SymmetricMphLevel(s);
    c.Check(level <= 3 * r * r, Fmt("m=%g r=%g level %g", m, r, level));
    worst = std::max(worst, static_cast<double>(level) / (3 * r * r));
  }
  c.Note(Fmt("100 profiles, max level / 3r^2 = %.3f", worst));
  return out;
}

struct Entry {
  const char* id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace mph

int main() {
  using mph::Entry;
  using mph::Outcome;
  const Entry entries[] = {
      {"AC1", "integrality gap k=2,3,4", 15, mph::IntegralityGap},
      {"AC2", "symmetric tight levels 4 and 6", 1, mph::SymmetricTightLevels},
      {"AC3", "symmetric dual certificates", 10, mph::SymmetricDuals},
      {"AC4", "rounding guarantee LP/(k+1)", 120, mph::RoundingGuarantee},
      {"AC5", "envelope constructors vs LP oracle", 180, mph::PleOracleEquivalence},
      {"AC6", "hierarchy identities", 30, mph::HierarchyIdentities},
      {"AC7", "mixed equilibrium of the PoA instance", 120, mph::PoaLowerBoundCheck},
      {"AC8", "learned CCE welfare bound", 600, mph::CceWelfareBound},
      {"AC9", "first-price smoothness spot check", 30, mph::SmoothnessSpotCheck},
      {"AC10", "k-fractional subadditivity vs level", 120, mph::DefinitionEquivalence},
      {"AC11", "symmetric level <= 3r^2", 60, mph::MarkovBound},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > e.budget_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(e.budget_seconds)) +
                  " s budget)";
    }
    failures += !o.ok;
    std::printf("[%s] %s %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", e.id,
                e.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(entries)) - failures, std::size(entries));
  return failures == 0 ? 0 : 1;
}
