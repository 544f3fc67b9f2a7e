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

#include "mph/ple.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mph/properties.h"
#include "mph/simplex.h"

namespace mph {
namespace {

using Bits = ItemSet::Bits;

double Slack(double tol, double scale) {
  return tol * std::max(1.0, std::abs(scale));
}

// Position of each original item inside the sorted member list of s.
Bits Compress(ItemSet e, std::span<const int> items) {
  Bits out = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (e.Contains(items[i])) out |= Bits{1} << i;
  }
  return out;
}

void CheckTarget(const ExplicitValuation& f, ItemSet s) {
  if (!s.FitsIn(f.m())) {
    Fail(ErrorCode::kInvalidInput, "target set outside the ground set");
  }
}

template <class T>
struct PleProgram {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> c;
  std::vector<Bits> var_sets;
};

template <class T>
PleProgram<T> BuildPleProgram(const ExplicitValuation& f,
                              std::span<const int> items, int k) {
  const int n = static_cast<int>(items.size());
  const Bits full = (Bits{1} << n) - 1;
  PleProgram<T> p;
  for (Bits s = 1; s <= full; ++s) {
    if (std::popcount(s) <= k) p.var_sets.push_back(s);
  }
  p.c.assign(p.var_sets.size(), T(1));
  for (Bits t = 1; t <= full; ++t) {
    std::vector<T> row(p.var_sets.size(), T(0));
    for (std::size_t v = 0; v < p.var_sets.size(); ++v) {
      if ((p.var_sets[v] & ~t) == 0) row[v] = T(1);
    }
    p.a.push_back(std::move(row));
    p.b.push_back(T(f(Expand(ItemSet(t), items))));
  }
  return p;
}

bool IsMonotone(const ExplicitValuation& f) {
  const auto& t = f.table();
  for (Bits s = 0; s < t.size(); ++s) {
    for (int j = 0; j < f.m(); ++j) {
      if (t[s] > t[s | (Bits{1} << j)] + 1e-9) return false;
    }
  }
  return true;
}

HierarchyLevel ClassifyLevel(const ExplicitValuation& f,
                             const LevelOptions& options, bool monotone) {
  const int m = f.m();
  HierarchyLevel out;
  out.monotone = monotone;
  const bool sampled = options.sample_restrictions > 0;
  const int cap = sampled ? kMaxSampledLevelItems : kMaxLevelItems;
  if (m > cap) {
    Fail(ErrorCode::kCapacity, "level classification supports at most " +
                                   std::to_string(cap) + " items");
  }
  for (double x : f.table()) {
    if (x < -kPleTolerance) return out;
  }
  if (m == 0) {
    out.level = 0;
    return out;
  }

  std::vector<ItemSet> sets;
  const ItemSet full = ItemSet::Full(m);
  if (sampled) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Bits> pick(1, full.bits());
    sets.push_back(full);
    for (int i = 0; i < options.sample_restrictions; ++i) {
      sets.push_back(ItemSet(pick(rng)));
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    out.lower_bound_only = true;
  } else {
    for (Bits s = 1; s <= full.bits(); ++s) sets.push_back(ItemSet(s));
  }
  // Larger restrictions fail most often, so try them first.
  std::stable_sort(sets.begin(), sets.end(), [](ItemSet a, ItemSet b) {
    return a.size() > b.size();
  });

  auto feasible = [&](int k) {
    for (ItemSet s : sets) {
      if (s.size() <= k) continue;
      ++out.restrictions_checked;
      if (!PleMaxLp(f, s, k).certified) return false;
    }
    return true;
  };

  // Low levels are common and cheap to refute, so scan upward.
  int lo = 1;
  while (lo < m && !feasible(lo)) ++lo;
  out.level = lo;

  if (options.keep_witnesses) {
    for (ItemSet s : sets) {
      if (s.size() <= lo) {
        Hypergraph g(m);
        if (f(s) > 0) g.Set(s, f(s));
        out.witnesses.emplace(s, PleWitness{std::move(g), s, lo});
      } else {
        PleLpResult r = PleMaxLp(f, s, lo);
        out.witnesses.emplace(s, PleWitness{std::move(r.envelope), s, lo});
      }
    }
  }
  return out;
}

}  // namespace

PleCheck ValidatePle(const ExplicitValuation& f, const PleWitness& w,
                     double tol) {
  CheckTarget(f, w.target_set);
  PleCheck c;
  c.nonnegative = w.envelope.NonNegative(tol);
  c.rank_ok = w.envelope.ranks().rank <= w.k;
  const std::vector<int> items = w.target_set.Items();
  const int n = static_cast<int>(items.size());
  std::vector<double> g(std::size_t{1} << n, 0.0);
  bool inside = true;
  for (const auto& [e, x] : w.envelope.edges()) {
    if (!e.IsSubsetOf(w.target_set)) {
      inside = false;
      continue;
    }
    g[Compress(e, items)] += x;
  }
  for (int j = 0; j < n; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t s = 0; s < g.size(); ++s) {
      if (s & bit) g[s] += g[s ^ bit];
    }
  }
  c.dominated = inside;
  c.worst_excess = -std::numeric_limits<double>::infinity();
  for (Bits t = 0; t < g.size(); ++t) {
    const ItemSet orig = Expand(ItemSet(t), items);
    const double excess = g[t] - f(orig);
    if (excess > c.worst_excess) {
      c.worst_excess = excess;
      c.worst_set = orig;
    }
    if (excess > Slack(tol, f(orig))) c.dominated = false;
  }
  const double target = f(w.target_set);
  c.target_gap = g.back() - target;
  c.matches_target = std::abs(c.target_gap) <= Slack(tol, target);
  c.valid = c.nonnegative && c.rank_ok && c.dominated && c.matches_target;
  return c;
}

PleLpResult PleMaxLp(const ExplicitValuation& f, ItemSet s, int k,
                     const PleLpOptions& options) {
  CheckTarget(f, s);
  if (k < 1) Fail(ErrorCode::kInvalidInput, "rank bound must be positive");
  if (s.size() > kMaxPleLpItems) {
    Fail(ErrorCode::kCapacity, "envelope LP supports at most " +
                                   std::to_string(kMaxPleLpItems) + " items");
  }
  PleLpResult out;
  out.envelope = Hypergraph(f.m());
  const double target = f(s);
  if (s.empty()) {
    out.opt_value = 0.0;
    out.certified = std::abs(target) <= kPleTolerance;
    return out;
  }
  const std::vector<int> items = s.Items();
  PleProgram<double> p = BuildPleProgram<double>(f, items, k);
  LpResult<double> r = SolveLp(p.a, p.b, p.c, options.max_iterations);
  if (r.status == LpStatus::kInfeasible) {
    out.opt_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  if (r.status != LpStatus::kOptimal) {
    Fail(ErrorCode::kSolver,
         std::string("envelope LP ended with status ") +
             LpStatusName(r.status) + " on " + s.ToString() + " after " +
             std::to_string(r.iterations) + " pivots");
  }
  out.opt_value = r.objective;
  for (std::size_t v = 0; v < p.var_sets.size(); ++v) {
    if (r.x[v] > 1e-12) {
      out.envelope.Add(Expand(ItemSet(p.var_sets[v]), items), r.x[v]);
    }
  }
  out.certified = std::abs(out.opt_value - target) <= Slack(kPleTolerance, target);
  if (options.exact_certify && std::abs(out.opt_value - target) <= 1e-5) {
    PleProgram<mpq_class> q = BuildPleProgram<mpq_class>(f, items, k);
    LpResult<mpq_class> e = SolveLp(q.a, q.b, q.c, options.max_iterations);
    out.exact_certified =
        e.status == LpStatus::kOptimal && e.objective == mpq_class(target);
  }
  return out;
}

HierarchyLevel MphLevel(const ExplicitValuation& f,
                        const LevelOptions& options) {
  if (!f.normalized(kPleTolerance)) {
    Fail(ErrorCode::kInvalidInput, "classification needs f(empty) = 0");
  }
  if (!IsMonotone(f)) {
    HierarchyLevel out;
    out.monotone = false;
    return out;
  }
  return ClassifyLevel(f, options, true);
}

HierarchyLevel PleLevel(const ExplicitValuation& f,
                        const LevelOptions& options) {
  return ClassifyLevel(f, options, IsMonotone(f));
}

double CoverLpValue(const ExplicitValuation& f, ItemSet s, int k) {
  CheckTarget(f, s);
  if (k < 1) Fail(ErrorCode::kInvalidInput, "rank bound must be positive");
  if (s.size() > kMaxPleLpItems) {
    Fail(ErrorCode::kCapacity, "cover LP supports at most " +
                                   std::to_string(kMaxPleLpItems) + " items");
  }
  if (s.empty()) return 0.0;
  const std::vector<int> items = s.Items();
  const Bits full = (Bits{1} << items.size()) - 1;
  std::vector<Bits> covers;
  std::vector<double> c;
  for (Bits t = 1; t <= full; ++t) {
    covers.push_back(t);
    c.push_back(-f(Expand(ItemSet(t), items)));
  }
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (Bits small = 1; small <= full; ++small) {
    if (std::popcount(small) > k) continue;
    std::vector<double> row(covers.size(), 0.0);
    for (std::size_t v = 0; v < covers.size(); ++v) {
      if ((small & ~covers[v]) == 0) row[v] = -1.0;
    }
    a.push_back(std::move(row));
    b.push_back(-1.0);
  }
  LpResult<double> r = SolveLp(a, b, c);
  if (r.status == LpStatus::kUnbounded) {
    return -std::numeric_limits<double>::infinity();
  }
  if (r.status != LpStatus::kOptimal) {
    Fail(ErrorCode::kSolver, std::string("cover LP ended with status ") +
                                 LpStatusName(r.status));
  }
  return -r.objective;
}

bool KFracSubadditiveCheck(const ExplicitValuation& f, int k) {
  if (f.m() > kMaxLevelItems) {
    Fail(ErrorCode::kCapacity, "cover check supports at most " +
                                   std::to_string(kMaxLevelItems) + " items");
  }
  const Bits full = ItemSet::Full(f.m()).bits();
  for (Bits s = 1; s <= full; ++s) {
    const ItemSet set(s);
    if (CoverLpValue(f, set, k) < f(set) - Slack(kPleTolerance, f(set))) {
      return false;
    }
  }
  return true;
}

}  // namespace mph
