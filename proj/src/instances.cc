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

#include "mph/instances.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "mph/auction.h"
#include "mph/error.h"
#include "mph/item_set.h"
#include "mph/ple.h"
#include "mph/properties.h"
#include "mph/random.h"

namespace mph {
namespace {

const CatalogEntry* Find(const std::string& name) {
  for (const CatalogEntry& e : Catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const CatalogEntry& Lookup(const std::string& name) {
  const CatalogEntry* e = Find(name);
  if (e == nullptr) {
    Fail(ErrorCode::kInvalidInput, "unknown catalog entry '" + name + "'");
  }
  return *e;
}

int IntParam(const Params& p, const char* key, int lo, int hi) {
  const double x = p.at(key).get<double>();
  if (x != std::floor(x) || x < lo || x > hi) {
    Fail(ErrorCode::kInvalidInput, std::string("parameter ") + key +
                                       " must be an integer in [" +
                                       std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

double RealParam(const Params& p, const char* key) {
  const double x = p.at(key).get<double>();
  if (!std::isfinite(x)) {
    Fail(ErrorCode::kInvalidInput, std::string("parameter ") + key +
                                       " must be finite");
  }
  return x;
}

std::uint64_t SeedParam(const Params& p) {
  const double x = p.at("seed").get<double>();
  if (x != std::floor(x) || x < 0 || x > 9007199254740992.0) {
    Fail(ErrorCode::kInvalidInput, "seed must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(x);
}

ExplicitValuation Tabulate(int m, const std::function<double(ItemSet)>& fn) {
  std::vector<double> t(std::size_t{1} << m);
  for (std::size_t s = 0; s < t.size(); ++s) {
    t[s] = fn(ItemSet(static_cast<ItemSet::Bits>(s)));
  }
  return ExplicitValuation(m, std::move(t));
}

ItemSet RandomEdge(std::mt19937_64& rng, int m, int max_size) {
  const int size = 1 + static_cast<int>(UniformIndex(rng, max_size));
  ItemSet s;
  while (s.size() < size) s = s.With(static_cast<int>(UniformIndex(rng, m)));
  return s;
}

// Raises each singleton weight by the most negative marginal of its item.
Hypergraph RepairMonotone(Hypergraph h) {
  const int m = h.m();
  const ExplicitValuation f = FromHypergraph(h);
  for (int j = 0; j < m; ++j) {
    double worst = 0.0;
    ForEachSubset(ItemSet::Full(m).Without(j), [&](ItemSet s) {
      worst = std::min(worst, f(s.With(j)) - f(s));
    });
    if (worst < 0.0) h.Add(ItemSet::Singleton(j), -worst);
  }
  h.Prune();
  return h;
}

MphRepresentation RandomMph(std::mt19937_64& rng, int m, int k, int clauses,
                            int edges) {
  std::vector<Hypergraph> cs;
  for (int c = 0; c < clauses; ++c) {
    Hypergraph h(m);
    for (int e = 0; e < edges; ++e) {
      h.Add(RandomEdge(rng, m, k), 0.1 + 0.9 * Uniform01(rng));
    }
    cs.push_back(h);
  }
  return MphRepresentation(m, k, cs);
}

Valuation Spectrum(double w_pair, double w_single, double penalty) {
  // Items A1, A2, B1, B2.
  Hypergraph h(4);
  for (int j = 0; j < 4; ++j) h.Add(ItemSet::Singleton(j), w_single);
  h.Add(ItemSet::Of({0, 1}), w_pair);
  h.Add(ItemSet::Of({2, 3}), w_pair);
  h.Add(ItemSet::Of({0, 2}), -w_single);
  h.Add(ItemSet::Of({1, 3}), -w_single);
  h.Add(ItemSet::Full(4), -penalty);
  h.Prune();
  if (!CheckProperties(FromHypergraph(h)).monotone) {
    Fail(ErrorCode::kInvalidInput, "spectrum parameters give a non-monotone "
                                   "valuation");
  }
  return h;
}

SymmetricValuation RandomSymmetric(std::mt19937_64& rng, int m, int r) {
  std::vector<double> c(r + 1, 0.0);
  for (int t = 1; t <= r; ++t) c[t] = 2.0 * Uniform01(rng) - 1.0;
  if (std::abs(c[r]) < 0.05) c[r] = c[r] < 0 ? -0.05 : 0.05;
  auto profile = [&]() {
    std::vector<double> p(m + 1, 0.0);
    for (int x = 0; x <= m; ++x) {
      for (int t = 1; t <= r; ++t) p[x] += c[t] * Binomial(x, t);
    }
    return p;
  };
  std::vector<double> p = profile();
  double worst = 0.0;
  for (int x = 0; x < m; ++x) worst = std::min(worst, p[x + 1] - p[x]);
  // The first difference gains exactly c[1] at every x.
  if (worst < 0.0) {
    c[1] -= worst;
    p = profile();
    for (int x = 0; x < m; ++x) p[x + 1] = std::max(p[x + 1], p[x]);
  }
  return SymmetricValuation(p);
}

bool IsMonotoneTable(const ExplicitValuation& f) {
  const auto& t = f.table();
  for (ItemSet::Bits s = 0; s < t.size(); ++s) {
    for (int j = 0; j < f.m(); ++j) {
      if (!((s >> j) & 1u) && t[s | (ItemSet::Bits{1} << j)] < t[s] - 1e-9) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

const std::vector<CatalogEntry>& Catalog() {
  static const std::vector<CatalogEntry> kCatalog = {
      {"f1", "f(S) = 1 for every nonempty S", "valuation",
       {{"m", 5, "items"}},
       {"mph_level = 1 [PAPER]", "submodular [PAPER]",
        "hypergraph rank = m [PAPER]"}},
      {"cap", "f(S) = min(|S|, m/2)", "valuation",
       {{"m", 6, "items"}},
       {"submodular [PAPER]", "f(M) = m/2 [TRIVIAL]"}},
      {"f2", "f(S) = C(|S|, 2): complete graph with unit edges", "valuation",
       {{"m", 8, "items"}},
       {"supermodular_degree = m - 1 [PAPER]", "hypergraph rank = 2 [TRIVIAL]"}},
      {"spectrum",
       "items A1 A2 B1 B2: singletons w_single, pairs {A1,A2} and {B1,B2} "
       "w_pair, cross pairs {A1,B1} and {A2,B2} -w_single, the 4-set -penalty",
       "valuation",
       {{"w_pair", 4, "complementary pair weight"},
        {"w_single", 1, "singleton weight"},
        {"penalty", 4, "negative 4-set weight, defaults to w_pair (largest "
                       "monotone value)"}},
       {"monotone [PAPER]", "positive rank 2 [PAPER]", "mph_level = 2 [PAPER]",
        "f(M) = 2 w_single + 2 w_pair - penalty [TRIVIAL]"}},
      {"sym3tight", "symmetric f(x) = x - C(x,2) + C(x,3) on 6 items",
       "valuation", {},
       {"f(6) = 11 [PAPER]", "f(5) = 5 [PAPER]",
        "symmetric_mph_level = 4 [PAPER]"}},
      {"sym4tight",
       "symmetric f(x) = 10 C(x,2) - 8 C(x,3) + 3 C(x,4) on 12 items",
       "valuation", {},
       {"f(12) = 385 [PAPER]", "f(11) = 220 [PAPER]",
        "symmetric_mph_level = 6 [PAPER]"}},
      {"fk_nonneg",
       "rank-2 nonnegative function: singleton C(k+1,2) on item 0, pairs +1, "
       "pairs through item 0 -k",
       "valuation",
       {{"k", 2, "complementarity parameter"}, {"m", 5, "items, >= k + 3"}},
       {"nonnegative [PAPER]", "ple_level > k [PAPER]",
        "f = 0 on item 0 plus k others [PAPER]"}},
      {"flat2", "f(S) = 1 for nonempty S != M, f(M) = 2", "valuation",
       {{"m", 4, "items, even"}},
       {"mph_level = m/2 [PAPER]"}},
      {"pp_singleminded",
       "single-minded unit bidders on the lines of the projective plane of "
       "order k-1",
       "instance", {{"k", 3, "line size"}},
       {"optimal_welfare = 1 [PAPER]", "config LP = k - 1 + 1/k [PAPER]"}},
      {"poa_lb",
       "k projective planes of order k-1 plus auxiliary bidders, one per "
       "point index",
       "instance",
       {{"k", 3, "line size"}, {"planes", 0, "number of planes, 0 means k"}},
       {"optimal_welfare = k(k-1)+1 [PAPER]", "poa = k - 1 + 1/k [PAPER]"}},
      {"rand_mph", "random MPH-k: maximum of random nonnegative rank-k clauses",
       "valuation",
       {{"m", 6, "items"},
        {"k", 2, "rank"},
        {"clauses", 3, "clauses"},
        {"edges", 4, "edges per clause"},
        {"seed", 1, "seed"}},
       {"monotone [DERIVED]", "mph_level <= k [DERIVED]"}},
      {"rand_mono_hg",
       "random signed rank-r hypergraph, singletons raised until monotone",
       "valuation",
       {{"m", 6, "items"},
        {"r", 3, "rank"},
        {"edges", 12, "random edges"},
        {"seed", 1, "seed"}},
       {"monotone [DERIVED]"}},
      {"rand_sym",
       "random symmetric rank-r profile sum_t c_t C(x,t), c_1 raised until "
       "monotone",
       "valuation",
       {{"m", 20, "items"}, {"r", 3, "rank"}, {"seed", 1, "seed"}},
       {"monotone [DERIVED]", "symmetric_mph_level <= 3 r^2 [PAPER]"}},
      {"rand_mph_auction", "n bidders with independent rand_mph valuations",
       "instance",
       {{"m", 6, "items"},
        {"n", 3, "bidders"},
        {"k", 2, "rank"},
        {"clauses", 2, "clauses per bidder"},
        {"edges", 3, "edges per clause"},
        {"seed", 1, "seed"}},
       {"config LP >= optimal_welfare [DERIVED]"}},
  };
  return kCatalog;
}

Params ResolveParams(const std::string& name, const Params& params) {
  const CatalogEntry& e = Lookup(name);
  if (!params.is_object()) {
    Fail(ErrorCode::kInvalidInput, "parameters must be a JSON object");
  }
  Params out = Params::object();
  for (auto it = params.begin(); it != params.end(); ++it) {
    const bool known = std::any_of(
        e.params.begin(), e.params.end(),
        [&](const ParamSpec& p) { return p.name == it.key(); });
    if (!known) {
      Fail(ErrorCode::kInvalidInput,
           "entry '" + name + "' has no parameter '" + it.key() + "'");
    }
    if (!it.value().is_number()) {
      Fail(ErrorCode::kInvalidInput, "parameter '" + it.key() +
                                         "' must be a number");
    }
  }
  for (const ParamSpec& p : e.params) {
    if (params.contains(p.name)) {
      out[p.name] = params[p.name];
    } else if (name == "spectrum" && p.name == "penalty") {
      out[p.name] = params.value("w_pair", 4.0);
    } else {
      out[p.name] = p.default_value;
    }
  }
  return out;
}

Generated Gen(const std::string& name, const Params& params) {
  const Params p = ResolveParams(name, params);
  if (name == "f1") {
    const int m = IntParam(p, "m", 1, kMaxExplicitItems);
    return Valuation(
        Tabulate(m, [](ItemSet s) { return s.empty() ? 0.0 : 1.0; }));
  }
  if (name == "cap") {
    const int m = IntParam(p, "m", 1, kMaxExplicitItems);
    std::vector<double> profile(m + 1);
    for (int x = 0; x <= m; ++x) profile[x] = std::min<double>(x, m / 2.0);
    return Valuation(SymmetricValuation(profile));
  }
  if (name == "f2") {
    const int m = IntParam(p, "m", 2, kMaxItems);
    Hypergraph h(m);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) h.Set(ItemSet::Of({a, b}), 1.0);
    }
    return Valuation(h);
  }
  if (name == "spectrum") {
    return Spectrum(RealParam(p, "w_pair"), RealParam(p, "w_single"),
                    RealParam(p, "penalty"));
  }
  if (name == "sym3tight") {
    std::vector<double> profile;
    for (int x = 0; x <= 6; ++x) {
      profile.push_back(x - Binomial(x, 2) + Binomial(x, 3));
    }
    return Valuation(SymmetricValuation(profile));
  }
  if (name == "sym4tight") {
    std::vector<double> profile;
    for (int x = 0; x <= 12; ++x) {
      profile.push_back(10 * Binomial(x, 2) - 8 * Binomial(x, 3) +
                        3 * Binomial(x, 4));
    }
    return Valuation(SymmetricValuation(profile));
  }
  if (name == "fk_nonneg") {
    const int k = IntParam(p, "k", 1, kMaxItems - 3);
    const int m = IntParam(p, "m", k + 3, kMaxItems);
    Hypergraph h(m);
    h.Add(ItemSet::Singleton(0), Binomial(k + 1, 2));
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        h.Add(ItemSet::Of({a, b}), a == 0 ? -k : 1.0);
      }
    }
    return Valuation(h);
  }
  if (name == "flat2") {
    const int m = IntParam(p, "m", 2, kMaxItems);
    if (m % 2 != 0) Fail(ErrorCode::kInvalidInput, "flat2 needs even m");
    std::vector<double> profile(m + 1, 1.0);
    profile[0] = 0.0;
    profile[m] = 2.0;
    return Valuation(SymmetricValuation(profile));
  }
  if (name == "pp_singleminded") {
    return IntegralityGapInstance(IntParam(p, "k", 2, 100));
  }
  if (name == "poa_lb") {
    return PoaLbInstance(IntParam(p, "k", 2, 100),
                         IntParam(p, "planes", 0, kMaxItems))
        .instance;
  }
  if (name == "rand_mph") {
    const int m = IntParam(p, "m", 1, kMaxItems);
    const int k = IntParam(p, "k", 1, m);
    std::mt19937_64 rng(SplitMix64(SeedParam(p)));
    return Valuation(RandomMph(rng, m, k, IntParam(p, "clauses", 1, 1000),
                               IntParam(p, "edges", 1, 1000)));
  }
  if (name == "rand_mono_hg") {
    const int m = IntParam(p, "m", 1, 16);
    const int r = IntParam(p, "r", 1, m);
    const int edges = IntParam(p, "edges", 0, 10000);
    std::mt19937_64 rng(SplitMix64(SeedParam(p)));
    Hypergraph h(m);
    for (int e = 0; e < edges; ++e) {
      h.Add(RandomEdge(rng, m, r), 2.0 * Uniform01(rng) - 1.0);
    }
    return Valuation(RepairMonotone(h));
  }
  if (name == "rand_sym") {
    const int m = IntParam(p, "m", 1, 200);
    const int r = IntParam(p, "r", 1, std::min(m, 8));
    std::mt19937_64 rng(SplitMix64(SeedParam(p)));
    return Valuation(RandomSymmetric(rng, m, r));
  }
  if (name == "rand_mph_auction") {
    const int m = IntParam(p, "m", 1, kMaxItems);
    const int n = IntParam(p, "n", 1, 1000);
    const int k = IntParam(p, "k", 1, m);
    const int clauses = IntParam(p, "clauses", 1, 1000);
    const int edges = IntParam(p, "edges", 1, 1000);
    std::mt19937_64 rng(SplitMix64(SeedParam(p)));
    AuctionInstance inst;
    inst.m = m;
    for (int i = 0; i < n; ++i) {
      inst.bidders.emplace_back(RandomMph(rng, m, k, clauses, edges));
    }
    inst.metadata.k = k;
    inst.metadata.construction = name;
    for (auto it = p.begin(); it != p.end(); ++it) {
      inst.metadata.params[it.key()] = it.value().get<double>();
    }
    return inst;
  }
  Fail(ErrorCode::kInvalidInput, "unknown catalog entry '" + name + "'");
}

ExpectationReport VerifyExpectations(const std::string& name,
                                     const Params& params) {
  ExpectationReport rep;
  rep.entry = name;
  rep.params = ResolveParams(name, params);
  const Params& p = rep.params;
  const Generated g = Gen(name, p);
  auto add = [&](std::string what, std::string tag, std::string rel,
                 double expected, double actual) {
    bool ok = false;
    if (rel == "==") ok = std::abs(expected - actual) <= 1e-9 * std::max(1.0, std::abs(expected));
    if (rel == "<=") ok = actual <= expected + 1e-9;
    if (rel == ">") ok = actual > expected;
    rep.results.push_back({std::move(what), std::move(tag), std::move(rel),
                           expected, actual, ok});
  };
  auto level = [](const std::optional<int>& l) {
    return l ? static_cast<double>(*l) : std::numeric_limits<double>::infinity();
  };
  auto flag = [](bool b) { return b ? 1.0 : 0.0; };

  if (const auto* v = std::get_if<Valuation>(&g)) {
    const int m = ItemCount(*v);
    if (name == "f1") {
      const ExplicitValuation f = ToExplicit(*v);
      if (m <= kMaxPropertyItems) {
        add("submodular", "PAPER", "==", 1,
            flag(CheckProperties(f).submodular));
      }
      if (m <= kMaxLevelItems) {
        add("mph_level", "PAPER", "==", 1, level(MphLevel(f).level));
      }
      add("hypergraph rank", "PAPER", "==", m, ToHypergraph(f).ranks().rank);
    } else if (name == "cap") {
      if (m <= kMaxPropertyItems) {
        add("submodular", "PAPER", "==", 1,
            flag(CheckProperties(ToExplicit(*v)).submodular));
      }
      add("f(M)", "TRIVIAL", "==", m / 2.0, Eval(*v, ItemSet::Full(m)));
    } else if (name == "f2") {
      if (m <= kMaxDegreeItems) {
        add("supermodular_degree", "PAPER", "==", m - 1,
            SupermodularDegree(ToExplicit(*v)).degree);
      }
      add("hypergraph rank", "TRIVIAL", "==", 2,
          std::get<Hypergraph>(*v).ranks().rank);
    } else if (name == "spectrum") {
      const ExplicitValuation f = ToExplicit(*v);
      const Ranks r = std::get<Hypergraph>(*v).ranks();
      add("monotone", "PAPER", "==", 1, flag(CheckProperties(f).monotone));
      add("positive rank", "PAPER", "==", 2, r.positive_rank);
      add("mph_level", "PAPER", "==", 2, level(MphLevel(f).level));
      add("f(M)", "TRIVIAL", "==",
          2 * p["w_single"].get<double>() + 2 * p["w_pair"].get<double>() -
              p["penalty"].get<double>(),
          f(ItemSet::Full(4)));
    } else if (name == "sym3tight" || name == "sym4tight") {
      const auto& s = std::get<SymmetricValuation>(*v);
      const bool three = name == "sym3tight";
      add("f(m)", "PAPER", "==", three ? 11 : 385, s.At(m));
      add("f(m-1)", "PAPER", "==", three ? 5 : 220, s.At(m - 1));
      add("symmetric_mph_level", "PAPER", "==", three ? 4 : 6,
          SymmetricMphLevel(s));
    } else if (name == "fk_nonneg") {
      const ExplicitValuation f = ToExplicit(*v);
      const int k = p["k"].get<int>();
      add("nonnegative", "PAPER", "==", 1, flag(CheckProperties(f).nonnegative));
      ItemSet zero = ItemSet::Singleton(0);
      for (int j = 1; j <= k; ++j) zero = zero.With(j);
      add("f(item 0 plus k others)", "PAPER", "==", 0, f(zero));
      if (m <= kMaxLevelItems) {
        add("ple_level", "PAPER", ">", k, level(PleLevel(f).level));
      }
    } else if (name == "flat2") {
      add("mph_level", "PAPER", "==", m / 2,
          level(MphLevel(ToExplicit(*v)).level));
    } else if (name == "rand_mph" && m <= ValueOracle::kMaxTableItems) {
      const ExplicitValuation f = ToExplicit(*v);
      add("monotone", "DERIVED", "==", 1, flag(IsMonotoneTable(f)));
      if (m <= kMaxLevelItems) {
        add("mph_level", "DERIVED", "<=", p["k"].get<int>(),
            level(MphLevel(f).level));
      }
    } else if (name == "rand_mono_hg") {
      add("monotone", "DERIVED", "==", 1,
          flag(IsMonotoneTable(ToExplicit(*v))));
    } else if (name == "rand_sym") {
      const auto& s = std::get<SymmetricValuation>(*v);
      const int r = p["r"].get<int>();
      add("monotone", "DERIVED", "==", 1, flag(s.Monotone(1e-9)));
      add("symmetric_mph_level", "PAPER", "<=", 3 * r * r,
          SymmetricMphLevel(s));
    }
  } else {
    const auto& inst = std::get<AuctionInstance>(g);
    if (name == "pp_singleminded") {
      const int k = p["k"].get<int>();
      add("optimal_welfare", "PAPER", "==", 1, OptimalWelfare(inst).value);
      add("config LP", "PAPER", "==", k - 1 + 1.0 / k,
          SolveConfigLp(inst).objective);
    } else if (name == "poa_lb") {
      const int k = p["k"].get<int>();
      add("optimal_welfare", "PAPER", "==", k * (k - 1) + 1,
          OptimalWelfare(inst).value);
      if (p["planes"].get<int>() == 0 || p["planes"].get<int>() == k) {
        add("poa metadata", "PAPER", "==", k - 1 + 1.0 / k,
            inst.metadata.poa.value_or(0.0));
      }
    } else if (name == "rand_mph_auction") {
      const double opt = OptimalWelfare(inst).value;
      add("optimal_welfare <= config LP", "DERIVED", "<=",
          SolveConfigLp(inst).objective, opt);
    }
  }
  rep.passed = std::all_of(rep.results.begin(), rep.results.end(),
                           [](const ExpectationResult& r) { return r.ok; });
  return rep;
}

}  // namespace mph
