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

#ifndef MPH_VALUATION_H_
#define MPH_VALUATION_H_

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "mph/item_set.h"

namespace mph {

// A set function stored as a full table indexed by subset bit pattern.
class ExplicitValuation {
 public:
  // Validates table length 2^m and finiteness of every entry.
  ExplicitValuation(int m, std::vector<double> table);

  static ExplicitValuation Zero(int m);

  int m() const { return m_; }
  const std::vector<double>& table() const { return table_; }
  double operator()(ItemSet s) const { return table_[s.bits()]; }
  double Value(ItemSet s) const;
  bool normalized(double tol = 1e-12) const;

 private:
  int m_;
  std::vector<double> table_;
};

struct Ranks {
  int rank = 0;
  int positive_rank = 0;
  int negative_rank = 0;
};

// Sparse signed hyperedge weights; the value of S sums the edges inside S.
class Hypergraph {
 public:
  explicit Hypergraph(int m = 0);

  int m() const { return m_; }
  const std::map<ItemSet, double>& edges() const { return edges_; }

  // Adds w to the weight of edge e. Zero results are kept until Prune().
  void Add(ItemSet e, double w);
  void Set(ItemSet e, double w);
  double Weight(ItemSet e) const;
  // Removes edges whose magnitude is below tol.
  void Prune(double tol = 1e-12);

  double Value(ItemSet s) const;
  double TotalWeight() const;
  Ranks ranks() const;
  bool NonNegative(double tol = 0.0) const;

 private:
  void CheckEdge(ItemSet e) const;

  int m_;
  std::map<ItemSet, double> edges_;
};

// A set function whose value depends only on cardinality.
class SymmetricValuation {
 public:
  // profile[t] is the value of any set of size t, t = 0..m.
  explicit SymmetricValuation(std::vector<double> profile);

  int m() const { return static_cast<int>(profile_.size()) - 1; }
  const std::vector<double>& profile() const { return profile_; }
  double At(int t) const { return profile_[t]; }
  double Value(ItemSet s) const;
  bool Monotone(double tol = 0.0) const;

 private:
  std::vector<double> profile_;
};

// Pointwise maximum over nonnegative hypergraphs of rank at most k.
class MphRepresentation {
 public:
  MphRepresentation(int m, int k, std::vector<Hypergraph> clauses);

  int m() const { return m_; }
  int k() const { return k_; }
  const std::vector<Hypergraph>& clauses() const { return clauses_; }
  double Value(ItemSet s) const;

 private:
  int m_;
  int k_;
  std::vector<Hypergraph> clauses_;
};

using Valuation = std::variant<ExplicitValuation, Hypergraph,
                               SymmetricValuation, MphRepresentation>;

int ItemCount(const Valuation& v);
// Errors with kInvalidInput when S has members outside the ground set.
double Eval(const Valuation& v, ItemSet s);
// Materializes the full table (m <= kMaxExplicitItems).
ExplicitValuation ToExplicit(const Valuation& v);

// Möbius inversion. Requires f(empty) = 0; drops |w| < drop_tol.
Hypergraph ToHypergraph(const ExplicitValuation& f, double drop_tol = 1e-12);
// Zeta transform of the edge weights.
ExplicitValuation FromHypergraph(const Hypergraph& h);

// Returns the desired bundle and its value when v is single-minded, i.e. an
// MPH representation with one clause holding one positive edge.
struct SingleMinded {
  ItemSet bundle;
  double value;
};
std::optional<SingleMinded> AsSingleMinded(const Valuation& v);

}  // namespace mph

#endif  // MPH_VALUATION_H_
