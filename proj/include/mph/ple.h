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

#ifndef MPH_PLE_H_
#define MPH_PLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mph/item_set.h"
#include "mph/valuation.h"

namespace mph {

// A nonnegative hypergraph of rank at most k that agrees with f on the target
// set and never exceeds f on its subsets.
struct PleWitness {
  Hypergraph envelope;
  ItemSet target_set;
  int k = 0;
};

struct PleCheck {
  bool valid = false;
  bool nonnegative = false;
  bool rank_ok = false;
  bool matches_target = false;
  bool dominated = false;
  // envelope(target) - f(target).
  double target_gap = 0.0;
  // Largest envelope(T) - f(T) over subsets T of the target, and where.
  double worst_excess = 0.0;
  ItemSet worst_set;
};

inline constexpr double kPleTolerance = 1e-7;

PleCheck ValidatePle(const ExplicitValuation& f, const PleWitness& w,
                     double tol = kPleTolerance);

inline constexpr int kMaxPleLpItems = 12;

struct PleLpOptions {
  // Re-solve in exact rational arithmetic when the float optimum is within
  // 1e-5 of f(S).
  bool exact_certify = false;
  long max_iterations = 5000000;
};

struct PleLpResult {
  // Negative infinity when no nonnegative hypergraph fits under f.
  double opt_value = 0.0;
  Hypergraph envelope;
  // opt_value matches f(S) within kPleTolerance.
  bool certified = false;
  std::optional<bool> exact_certified;
};

// Largest total weight of a rank-k nonnegative hypergraph on S that stays at
// or below f on every subset of S.
PleLpResult PleMaxLp(const ExplicitValuation& f, ItemSet s, int k,
                     const PleLpOptions& options = {});

struct HierarchyLevel {
  // Minimal k; empty when no rank admits envelopes everywhere (or the input is
  // not monotone for MphLevel).
  std::optional<int> level;
  bool monotone = false;
  // Keyed by restriction set; filled when requested.
  std::map<ItemSet, PleWitness> witnesses;
  // True when only a random sample of restrictions was checked.
  bool lower_bound_only = false;
  long restrictions_checked = 0;
};

inline constexpr int kMaxLevelItems = 10;
inline constexpr int kMaxSampledLevelItems = 14;

struct LevelOptions {
  bool keep_witnesses = false;
  // Zero checks every restriction; otherwise this many random restrictions
  // plus the ground set (allowed up to kMaxSampledLevelItems items).
  int sample_restrictions = 0;
  std::uint64_t seed = 0;
};

HierarchyLevel MphLevel(const ExplicitValuation& f,
                        const LevelOptions& options = {});
HierarchyLevel PleLevel(const ExplicitValuation& f,
                        const LevelOptions& options = {});

// Optimal value of the k-fractional cover program on S: the cheapest
// fractional cover of all size-at-most-k subsets of S by subsets of S.
double CoverLpValue(const ExplicitValuation& f, ItemSet s, int k);
// True when the cover value reaches f(S) for every S.
bool KFracSubadditiveCheck(const ExplicitValuation& f, int k);

// Constructive envelopes on a target set S.
PleWitness Ple2Flow(const ExplicitValuation& f, ItemSet s);
PleWitness PleLaminar(const ExplicitValuation& f, ItemSet s);
PleWitness Ple1Matching(const ExplicitValuation& f, ItemSet s);
// ordering is a permutation of all m items.
PleWitness SupermodularPle(const ExplicitValuation& f,
                           std::span<const int> ordering, ItemSet s);

// Canonical envelope of a symmetric function: weight f(m)/C(m,R) on every
// R-subset, i.e. g(t) = C(t,R)/C(m,R) f(m).
struct SymmetricPleWitness {
  int m = 0;
  int r = 0;
  double edge_weight = 0.0;
  std::vector<double> envelope_profile;
  bool valid = false;
  int worst_t = 0;
  double worst_excess = 0.0;

  // Explicit hyperedges; m <= 16.
  PleWitness Materialize() const;
};

SymmetricPleWitness CanonicalSymmetricPle(const SymmetricValuation& f, int r);
// Minimal R for which every restriction passes the canonical test.
int SymmetricMphLevel(const SymmetricValuation& f);

struct SymmetricLpCertificate {
  int m = 0;
  int r = 0;
  // Hypergraph coefficient per cardinality 1..r of the worst monotone
  // profile scaled to f(m) = m.
  std::vector<double> primal_x;
  double primal_value = 0.0;
  std::vector<double> dual_y;
  double dual_z = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double dual_residual = 0.0;
};

// Minimizes f(m-1) over monotone symmetric rank-r profiles with f(m) = m.
SymmetricLpCertificate SymmetricWorstcaseLp(int m, int r);

struct DualFeasibility {
  bool feasible = false;
  std::vector<double> y;
  double residual = 0.0;
};

// Searches y >= 0 satisfying the dual equalities with z held fixed.
DualFeasibility SymmetricDualAtZ(int m, int r, double z);

}  // namespace mph

#endif  // MPH_PLE_H_
