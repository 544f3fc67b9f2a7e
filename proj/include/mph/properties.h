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

#ifndef MPH_PROPERTIES_H_
#define MPH_PROPERTIES_H_

#include <optional>
#include <span>
#include <vector>

#include "mph/item_set.h"
#include "mph/valuation.h"

namespace mph {

struct SetPair {
  ItemSet first;
  ItemSet second;
};

// Outcome of exhaustive structural checks. Each false flag has its witness
// populated; true flags leave the witness empty.
struct PropertyReport {
  bool normalized = true;
  bool monotone = true;
  bool nonnegative = true;
  bool submodular = true;
  bool subadditive = true;
  bool symmetric = true;
  // f(first) > f(second) with first a subset of second.
  std::optional<SetPair> monotone_witness;
  // f(A) + f(B) < f(A | B) + f(A & B).
  std::optional<SetPair> submodular_witness;
  // f(A | B) > f(A) + f(B).
  std::optional<SetPair> subadditive_witness;
  // Equal cardinality, different values.
  std::optional<SetPair> symmetric_witness;
  std::optional<ItemSet> negative_witness;
};

inline constexpr int kMaxPropertyItems = 12;

// Exhaustive checks for m <= kMaxPropertyItems. Comparisons use an absolute
// slack of tol.
PropertyReport CheckProperties(const ExplicitValuation& f, double tol = 1e-9);

// Utility-maximizing bundle at the given item prices. Ties prefer the larger
// bundle, then the smaller bit pattern.
ItemSet DemandQuery(const Valuation& v, std::span<const double> prices);
ItemSet DemandQuery(const ExplicitValuation& f, std::span<const double> prices);

// f(T | S) = f(T u S) - f(S).
double Marginal(const Valuation& v, ItemSet t, ItemSet s);

struct SupermodularDegreeResult {
  int degree = 0;
  // dependencies[j] lists the items j' with f(j | S + j') > f(j | S) for some
  // S avoiding both.
  std::vector<ItemSet> dependencies;
};

inline constexpr int kMaxDegreeItems = 16;
SupermodularDegreeResult SupermodularDegree(const ExplicitValuation& f,
                                            double tol = 1e-9);

enum class CombineMode { kXor, kOr };
ExplicitValuation Combine(const ExplicitValuation& f,
                          const ExplicitValuation& g, CombineMode mode);

struct Restriction {
  ExplicitValuation valuation;
  // items[i] is the original index of relabeled item i.
  std::vector<int> items;
};
Restriction Restrict(const Valuation& v, ItemSet s);
Restriction Restrict(const ExplicitValuation& f, ItemSet s);

// Maps a subset of the relabeled ground set back to original indices.
ItemSet Expand(ItemSet local, std::span<const int> items);

// rho = max f/g over min f/g, over nonempty sets. 0/0 terms are skipped and
// x/0 with x > 0 makes the ratio infinite.
double ApproxRatio(const ExplicitValuation& f, const ExplicitValuation& g);

}  // namespace mph

#endif  // MPH_PROPERTIES_H_
