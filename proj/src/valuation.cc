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

#include "mph/valuation.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mph {
namespace {

void CheckItemCount(int m, int cap) {
  if (m < 0) Fail(ErrorCode::kInvalidInput, "negative item count");
  if (m > cap) {
    Fail(ErrorCode::kCapacity, "item count " + std::to_string(m) +
                                   " exceeds limit " + std::to_string(cap));
  }
}

void CheckSet(ItemSet s, int m) {
  if (!s.FitsIn(m)) {
    Fail(ErrorCode::kInvalidInput, "set " + s.ToString() +
                                       " has items outside a ground set of " +
                                       std::to_string(m));
  }
}

}  // namespace

ExplicitValuation::ExplicitValuation(int m, std::vector<double> table)
    : m_(m), table_(std::move(table)) {
  CheckItemCount(m, kMaxExplicitItems);
  if (table_.size() != (std::size_t{1} << m)) {
    Fail(ErrorCode::kInvalidInput,
         "table has " + std::to_string(table_.size()) + " entries, expected " +
             std::to_string(std::size_t{1} << m));
  }
  for (double x : table_) {
    if (!std::isfinite(x)) Fail(ErrorCode::kInvalidInput, "non-finite value");
  }
}

ExplicitValuation ExplicitValuation::Zero(int m) {
  CheckItemCount(m, kMaxExplicitItems);
  return ExplicitValuation(m, std::vector<double>(std::size_t{1} << m, 0.0));
}

double ExplicitValuation::Value(ItemSet s) const {
  CheckSet(s, m_);
  return table_[s.bits()];
}

bool ExplicitValuation::normalized(double tol) const {
  return std::abs(table_[0]) <= tol;
}

Hypergraph::Hypergraph(int m) : m_(m) { CheckItemCount(m, kMaxItems); }

void Hypergraph::CheckEdge(ItemSet e) const {
  if (e.empty()) Fail(ErrorCode::kInvalidInput, "hyperedge on the empty set");
  CheckSet(e, m_);
}

void Hypergraph::Add(ItemSet e, double w) {
  CheckEdge(e);
  if (!std::isfinite(w)) Fail(ErrorCode::kInvalidInput, "non-finite weight");
  edges_[e] += w;
}

void Hypergraph::Set(ItemSet e, double w) {
  CheckEdge(e);
  if (!std::isfinite(w)) Fail(ErrorCode::kInvalidInput, "non-finite weight");
  edges_[e] = w;
}

double Hypergraph::Weight(ItemSet e) const {
  auto it = edges_.find(e);
  return it == edges_.end() ? 0.0 : it->second;
}

void Hypergraph::Prune(double tol) {
  std::erase_if(edges_,
                [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

double Hypergraph::Value(ItemSet s) const {
  CheckSet(s, m_);
  double total = 0.0;
  for (const auto& [e, w] : edges_) {
    if (e.IsSubsetOf(s)) total += w;
  }
  return total;
}

double Hypergraph::TotalWeight() const {
  double total = 0.0;
  for (const auto& [e, w] : edges_) total += w;
  return total;
}

Ranks Hypergraph::ranks() const {
  Ranks r;
  for (const auto& [e, w] : edges_) {
    if (w == 0.0) continue;
    r.rank = std::max(r.rank, e.size());
    if (w > 0) {
      r.positive_rank = std::max(r.positive_rank, e.size());
    } else {
      r.negative_rank = std::max(r.negative_rank, e.size());
    }
  }
  return r;
}

bool Hypergraph::NonNegative(double tol) const {
  for (const auto& [e, w] : edges_) {
    if (w < -tol) return false;
  }
  return true;
}

SymmetricValuation::SymmetricValuation(std::vector<double> profile)
    : profile_(std::move(profile)) {
  if (profile_.empty()) Fail(ErrorCode::kInvalidInput, "empty profile");
  for (double x : profile_) {
    if (!std::isfinite(x)) Fail(ErrorCode::kInvalidInput, "non-finite value");
  }
}

double SymmetricValuation::Value(ItemSet s) const {
  CheckSet(s, std::min(m(), kMaxItems));
  return profile_[s.size()];
}

bool SymmetricValuation::Monotone(double tol) const {
  for (std::size_t t = 1; t < profile_.size(); ++t) {
    if (profile_[t] < profile_[t - 1] - tol) return false;
  }
  return true;
}

MphRepresentation::MphRepresentation(int m, int k,
                                     std::vector<Hypergraph> clauses)
    : m_(m), k_(k), clauses_(std::move(clauses)) {
  CheckItemCount(m, kMaxItems);
  if (k < 1) Fail(ErrorCode::kInvalidInput, "rank bound must be positive");
  for (const Hypergraph& c : clauses_) {
    if (c.m() != m) Fail(ErrorCode::kInvalidInput, "clause item count differs");
    if (!c.NonNegative()) {
      Fail(ErrorCode::kInvalidInput, "clause has a negative hyperedge");
    }
    if (c.ranks().rank > k) {
      Fail(ErrorCode::kInvalidInput, "clause rank exceeds declared bound");
    }
  }
}

double MphRepresentation::Value(ItemSet s) const {
  CheckSet(s, m_);
  double best = 0.0;
  bool first = true;
  for (const Hypergraph& c : clauses_) {
    double x = c.Value(s);
    if (first || x > best) best = x;
    first = false;
  }
  return best;
}

int ItemCount(const Valuation& v) {
  return std::visit([](const auto& x) { return x.m(); }, v);
}

double Eval(const Valuation& v, ItemSet s) {
  return std::visit([s](const auto& x) { return x.Value(s); }, v);
}

ExplicitValuation ToExplicit(const Valuation& v) {
  if (const auto* e = std::get_if<ExplicitValuation>(&v)) return *e;
  if (const auto* h = std::get_if<Hypergraph>(&v)) return FromHypergraph(*h);
  const int m = ItemCount(v);
  CheckItemCount(m, kMaxExplicitItems);
  std::vector<double> table(std::size_t{1} << m);
  if (const auto* sym = std::get_if<SymmetricValuation>(&v)) {
    for (std::size_t b = 0; b < table.size(); ++b) {
      table[b] = sym->At(std::popcount(static_cast<ItemSet::Bits>(b)));
    }
  } else {
    const auto& mph = std::get<MphRepresentation>(v);
    std::fill(table.begin(), table.end(), 0.0);
    bool first = true;
    for (const Hypergraph& c : mph.clauses()) {
      ExplicitValuation g = FromHypergraph(c);
      for (std::size_t b = 0; b < table.size(); ++b) {
        table[b] = first ? g.table()[b] : std::max(table[b], g.table()[b]);
      }
      first = false;
    }
  }
  return ExplicitValuation(m, std::move(table));
}

Hypergraph ToHypergraph(const ExplicitValuation& f, double drop_tol) {
  if (!f.normalized()) {
    Fail(ErrorCode::kInvalidInput, "Möbius inversion needs f(empty) = 0");
  }
  const int m = f.m();
  std::vector<double> a = f.table();
  for (int j = 0; j < m; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (s & bit) a[s] -= a[s ^ bit];
    }
  }
  Hypergraph h(m);
  for (std::size_t s = 1; s < a.size(); ++s) {
    if (std::abs(a[s]) >= drop_tol) {
      h.Set(ItemSet(static_cast<ItemSet::Bits>(s)), a[s]);
    }
  }
  return h;
}

ExplicitValuation FromHypergraph(const Hypergraph& h) {
  const int m = h.m();
  CheckItemCount(m, kMaxExplicitItems);
  std::vector<double> a(std::size_t{1} << m, 0.0);
  for (const auto& [e, w] : h.edges()) a[e.bits()] += w;
  for (int j = 0; j < m; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t s = 0; s < a.size(); ++s) {
      if (s & bit) a[s] += a[s ^ bit];
    }
  }
  return ExplicitValuation(m, std::move(a));
}

std::optional<SingleMinded> AsSingleMinded(const Valuation& v) {
  const auto* mph = std::get_if<MphRepresentation>(&v);
  if (mph == nullptr || mph->clauses().size() != 1) return std::nullopt;
  const auto& edges = mph->clauses()[0].edges();
  if (edges.size() != 1 || edges.begin()->second <= 0) return std::nullopt;
  return SingleMinded{edges.begin()->first, edges.begin()->second};
}

}  // namespace mph
