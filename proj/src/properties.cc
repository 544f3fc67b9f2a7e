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

#include "mph/properties.h"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace mph {
namespace {

using Bits = ItemSet::Bits;

bool BetterDemand(double u, ItemSet s, double best_u, ItemSet best) {
  const double eps = 1e-12 * std::max(1.0, std::abs(best_u));
  if (u > best_u + eps) return true;
  if (u < best_u - eps) return false;
  return s.size() > best.size() ||
         (s.size() == best.size() && s.bits() < best.bits());
}

}  // namespace

PropertyReport CheckProperties(const ExplicitValuation& f, double tol) {
  const int m = f.m();
  if (m > kMaxPropertyItems) {
    Fail(ErrorCode::kCapacity, "property checks support at most " +
                                   std::to_string(kMaxPropertyItems) +
                                   " items");
  }
  const auto& t = f.table();
  const Bits n = Bits{1} << m;
  PropertyReport r;
  r.normalized = std::abs(t[0]) <= tol;

  for (Bits s = 0; s < n; ++s) {
    if (r.nonnegative && t[s] < -tol) {
      r.nonnegative = false;
      r.negative_witness = ItemSet(s);
    }
    for (int j = 0; j < m && r.monotone; ++j) {
      const Bits sj = s | (Bits{1} << j);
      if (sj != s && t[s] > t[sj] + tol) {
        r.monotone = false;
        r.monotone_witness = SetPair{ItemSet(s), ItemSet(sj)};
      }
    }
    for (int j = 0; j < m && r.submodular; ++j) {
      if ((s >> j) & 1u) continue;
      for (int k = j + 1; k < m; ++k) {
        if ((s >> k) & 1u) continue;
        const Bits a = s | (Bits{1} << j);
        const Bits b = s | (Bits{1} << k);
        if (t[a] + t[b] < t[a | b] + t[s] - tol) {
          r.submodular = false;
          r.submodular_witness = SetPair{ItemSet(a), ItemSet(b)};
          break;
        }
      }
    }
  }

  for (Bits a = 0; a < n && r.subadditive; ++a) {
    for (Bits b = a; b < n; ++b) {
      if (t[a | b] > t[a] + t[b] + tol) {
        r.subadditive = false;
        r.subadditive_witness = SetPair{ItemSet(a), ItemSet(b)};
        break;
      }
    }
  }

  std::vector<Bits> first_of_size(m + 1, n);
  for (Bits s = 0; s < n && r.symmetric; ++s) {
    const int c = std::popcount(s);
    if (first_of_size[c] == n) {
      first_of_size[c] = s;
    } else if (std::abs(t[s] - t[first_of_size[c]]) > tol) {
      r.symmetric = false;
      r.symmetric_witness = SetPair{ItemSet(first_of_size[c]), ItemSet(s)};
    }
  }
  return r;
}

ItemSet DemandQuery(const ExplicitValuation& f,
                    std::span<const double> prices) {
  const int m = f.m();
  if (static_cast<int>(prices.size()) != m) {
    Fail(ErrorCode::kInvalidInput, "price vector length differs from m");
  }
  for (double p : prices) {
    if (!std::isfinite(p)) Fail(ErrorCode::kInvalidInput, "non-finite price");
  }
  const Bits n = Bits{1} << m;
  // Subset price sums built incrementally from the lowest set bit.
  std::vector<double> cost(n, 0.0);
  ItemSet best;
  double best_u = f.table()[0];
  for (Bits s = 1; s < n; ++s) {
    const int low = std::countr_zero(s);
    cost[s] = cost[s & (s - 1)] + prices[low];
    const double u = f.table()[s] - cost[s];
    if (BetterDemand(u, ItemSet(s), best_u, best)) {
      best_u = u;
      best = ItemSet(s);
    }
  }
  return best;
}

ItemSet DemandQuery(const Valuation& v, std::span<const double> prices) {
  const std::optional<SingleMinded> sm = AsSingleMinded(v);
  if (!sm) return DemandQuery(ToExplicit(v), prices);
  const int m = ItemCount(v);
  if (static_cast<int>(prices.size()) != m) {
    Fail(ErrorCode::kInvalidInput, "price vector length differs from m");
  }
  // Free items are always taken; the bundle is added when it pays off.
  ItemSet free;
  for (int j = 0; j < m; ++j) {
    if (!std::isfinite(prices[j])) {
      Fail(ErrorCode::kInvalidInput, "non-finite price");
    }
    if (prices[j] <= 0.0) free = free.With(j);
  }
  double extra = 0.0;
  for (int j : (sm->bundle - free).Items()) extra += prices[j];
  return sm->value - extra >= 0.0 ? free | sm->bundle : free;
}

double Marginal(const Valuation& v, ItemSet t, ItemSet s) {
  return Eval(v, t | s) - Eval(v, s);
}

SupermodularDegreeResult SupermodularDegree(const ExplicitValuation& f,
                                            double tol) {
  const int m = f.m();
  if (m > kMaxDegreeItems) {
    Fail(ErrorCode::kCapacity, "supermodular degree supports at most " +
                                   std::to_string(kMaxDegreeItems) + " items");
  }
  const auto& t = f.table();
  SupermodularDegreeResult r;
  r.dependencies.assign(m, ItemSet());
  const ItemSet full = ItemSet::Full(m);
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      const Bits bj = Bits{1} << j;
      const Bits bk = Bits{1} << k;
      bool dependent = false;
      ForEachSubset(full.Without(j).Without(k), [&](ItemSet s) {
        if (dependent) return;
        const Bits b = s.bits();
        if (t[b | bj | bk] - t[b | bk] > t[b | bj] - t[b] + tol) {
          dependent = true;
        }
      });
      if (dependent) {
        r.dependencies[j] = r.dependencies[j].With(k);
        r.dependencies[k] = r.dependencies[k].With(j);
      }
    }
  }
  for (ItemSet d : r.dependencies) r.degree = std::max(r.degree, d.size());
  return r;
}

ExplicitValuation Combine(const ExplicitValuation& f,
                          const ExplicitValuation& g, CombineMode mode) {
  if (f.m() != g.m()) {
    Fail(ErrorCode::kInvalidInput, "combined valuations differ in item count");
  }
  const int m = f.m();
  std::vector<double> out(f.table().size());
  if (mode == CombineMode::kXor) {
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = std::max(f.table()[s], g.table()[s]);
    }
  } else {
    if (m > kMaxDegreeItems) {
      Fail(ErrorCode::kCapacity, "OR combination supports at most " +
                                     std::to_string(kMaxDegreeItems) +
                                     " items");
    }
    for (std::size_t s = 0; s < out.size(); ++s) {
      double best = -std::numeric_limits<double>::infinity();
      ForEachSubset(ItemSet(static_cast<Bits>(s)), [&](ItemSet part) {
        const Bits rest = static_cast<Bits>(s) & ~part.bits();
        best = std::max(best, f.table()[part.bits()] + g.table()[rest]);
      });
      out[s] = best;
    }
  }
  return ExplicitValuation(m, std::move(out));
}

ItemSet Expand(ItemSet local, std::span<const int> items) {
  Bits out = 0;
  for (Bits b = local.bits(); b != 0; b &= b - 1) {
    out |= Bits{1} << items[std::countr_zero(b)];
  }
  return ItemSet(out);
}

Restriction Restrict(const ExplicitValuation& f, ItemSet s) {
  if (!s.FitsIn(f.m())) {
    Fail(ErrorCode::kInvalidInput, "restriction set outside the ground set");
  }
  std::vector<int> items = s.Items();
  const int k = static_cast<int>(items.size());
  std::vector<double> table(std::size_t{1} << k);
  for (Bits b = 0; b < table.size(); ++b) {
    table[b] = f(Expand(ItemSet(b), items));
  }
  return Restriction{ExplicitValuation(k, std::move(table)), std::move(items)};
}

Restriction Restrict(const Valuation& v, ItemSet s) {
  if (const auto* e = std::get_if<ExplicitValuation>(&v)) {
    return Restrict(*e, s);
  }
  std::vector<int> items = s.Items();
  const int k = static_cast<int>(items.size());
  if (k > kMaxExplicitItems) {
    Fail(ErrorCode::kCapacity, "restriction too large to tabulate");
  }
  std::vector<double> table(std::size_t{1} << k);
  for (Bits b = 0; b < table.size(); ++b) {
    table[b] = Eval(v, Expand(ItemSet(b), items));
  }
  return Restriction{ExplicitValuation(k, std::move(table)), std::move(items)};
}

double ApproxRatio(const ExplicitValuation& f, const ExplicitValuation& g) {
  if (f.m() != g.m()) {
    Fail(ErrorCode::kInvalidInput, "compared valuations differ in item count");
  }
  const double inf = std::numeric_limits<double>::infinity();
  double lo = inf;
  double hi = -inf;
  for (std::size_t s = 1; s < f.table().size(); ++s) {
    const double a = f.table()[s];
    const double b = g.table()[s];
    if (a == 0.0 && b == 0.0) continue;
    if (b == 0.0) return inf;
    const double q = a / b;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  if (lo == inf) return 1.0;
  if (lo <= 0.0) return inf;
  return hi / lo;
}

}  // namespace mph
