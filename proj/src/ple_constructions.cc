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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mph/max_flow.h"
#include "mph/ple.h"
#include "mph/properties.h"

namespace mph {
namespace {

struct Edge {
  ItemSet set;
  double weight;
};

// Hyperedges of f that lie inside s; these represent the restriction f_s.
std::vector<Edge> EdgesInside(const ExplicitValuation& f, ItemSet s) {
  if (!s.FitsIn(f.m())) {
    Fail(ErrorCode::kInvalidInput, "target set outside the ground set");
  }
  Restriction r = Restrict(f, s);
  Hypergraph local = ToHypergraph(r.valuation);
  std::vector<Edge> out;
  for (const auto& [e, w] : local.edges()) {
    out.push_back({Expand(e, r.items), w});
  }
  return out;
}

double FlowSlack(double total) { return 1e-9 * std::max(1.0, total); }

}  // namespace

PleWitness Ple2Flow(const ExplicitValuation& f, ItemSet s) {
  const std::vector<Edge> edges = EdgesInside(f, s);
  for (const Edge& e : edges) {
    if (e.weight > 0 && e.set.size() > 2) {
      Fail(ErrorCode::kPrecondition,
           "positive hyperedge " + e.set.ToString() + " has rank above 2");
    }
  }
  Hypergraph g(f.m());
  ItemSet prefix;
  for (int u : s.Items()) {
    prefix = prefix.With(u);
    std::vector<const Edge*> neg;
    std::vector<const Edge*> pos;
    for (const Edge& e : edges) {
      if (!e.set.Contains(u) || !e.set.IsSubsetOf(prefix)) continue;
      (e.weight < 0 ? neg : pos).push_back(&e);
    }
    const int source = 0;
    const int sink = 1;
    const int n_neg = static_cast<int>(neg.size());
    MaxFlow net(2 + n_neg + static_cast<int>(pos.size()));
    double demand = 0.0;
    for (int a = 0; a < n_neg; ++a) {
      net.AddArc(source, 2 + a, -neg[a]->weight);
      demand -= neg[a]->weight;
    }
    std::vector<int> out_arcs;
    for (std::size_t b = 0; b < pos.size(); ++b) {
      out_arcs.push_back(net.AddArc(2 + n_neg + b, sink, pos[b]->weight));
      for (int a = 0; a < n_neg; ++a) {
        if (pos[b]->set.IsSubsetOf(neg[a]->set)) {
          net.AddArc(2 + a, 2 + n_neg + b, MaxFlow::kInfinity);
        }
      }
    }
    const double flow = net.Run(source, sink);
    if (flow < demand - FlowSlack(demand)) {
      Fail(ErrorCode::kNotMonotone,
           "negative hyperedges at item " + std::to_string(u) +
               " cannot be charged to positive ones (" +
               std::to_string(flow) + " of " + std::to_string(demand) +
               "); the input is not monotone");
    }
    for (std::size_t b = 0; b < pos.size(); ++b) {
      const double left = pos[b]->weight - net.Flow(out_arcs[b]);
      if (left > 1e-12) g.Add(pos[b]->set, left);
    }
  }
  return PleWitness{std::move(g), s, 2};
}

PleWitness PleLaminar(const ExplicitValuation& f, ItemSet s) {
  const std::vector<Edge> edges = EdgesInside(f, s);
  std::vector<Edge> neg;
  std::vector<Edge> pos;
  int positive_rank = 1;
  for (const Edge& e : edges) {
    if (e.weight < 0) {
      neg.push_back(e);
    } else {
      pos.push_back(e);
      positive_rank = std::max(positive_rank, e.set.size());
    }
  }
  for (std::size_t a = 0; a < neg.size(); ++a) {
    for (std::size_t b = a + 1; b < neg.size(); ++b) {
      const ItemSet x = neg[a].set;
      const ItemSet y = neg[b].set;
      if (x.Intersects(y) && !x.IsSubsetOf(y) && !y.IsSubsetOf(x)) {
        Fail(ErrorCode::kPrecondition, "negative hyperedges " + x.ToString() +
                                           " and " + y.ToString() +
                                           " cross; the family is not laminar");
      }
    }
  }
  std::stable_sort(neg.begin(), neg.end(), [](const Edge& a, const Edge& b) {
    return a.set.size() < b.set.size();
  });
  for (const Edge& e : neg) {
    double available = 0.0;
    for (const Edge& p : pos) {
      if (p.set.IsSubsetOf(e.set)) available += p.weight;
    }
    const double charge = -e.weight;
    if (available < charge - FlowSlack(charge)) {
      Fail(ErrorCode::kInvalidInput,
           "f is negative on " + e.set.ToString() +
               " after earlier charges; the input is not nonnegative");
    }
    if (available <= 0.0) continue;
    const double keep = std::max(0.0, 1.0 - charge / available);
    for (Edge& p : pos) {
      if (p.set.IsSubsetOf(e.set)) p.weight *= keep;
    }
  }
  Hypergraph g(f.m());
  for (const Edge& p : pos) {
    if (p.weight > 1e-12) g.Add(p.set, p.weight);
  }
  return PleWitness{std::move(g), s, positive_rank};
}

PleWitness Ple1Matching(const ExplicitValuation& f, ItemSet s) {
  const std::vector<Edge> edges = EdgesInside(f, s);
  std::vector<Edge> neg;
  std::vector<Edge> singles;
  for (const Edge& e : edges) {
    if (e.weight < 0) {
      neg.push_back(e);
    } else if (e.set.size() == 1) {
      singles.push_back(e);
    } else {
      Fail(ErrorCode::kPrecondition,
           "positive hyperedge " + e.set.ToString() + " has rank above 1");
    }
  }
  const int source = 0;
  const int sink = 1;
  const int n_neg = static_cast<int>(neg.size());
  MaxFlow net(2 + n_neg + static_cast<int>(singles.size()));
  double demand = 0.0;
  for (int a = 0; a < n_neg; ++a) {
    net.AddArc(source, 2 + a, -neg[a].weight);
    demand -= neg[a].weight;
  }
  std::vector<int> out_arcs;
  for (std::size_t b = 0; b < singles.size(); ++b) {
    out_arcs.push_back(net.AddArc(2 + n_neg + b, sink, singles[b].weight));
    for (int a = 0; a < n_neg; ++a) {
      if (singles[b].set.IsSubsetOf(neg[a].set)) {
        net.AddArc(2 + a, 2 + n_neg + b, MaxFlow::kInfinity);
      }
    }
  }
  const double flow = net.Run(source, sink);
  if (flow < demand - FlowSlack(demand)) {
    const std::vector<bool> side = net.SourceSide(source);
    ItemSet witness;
    for (int a = 0; a < n_neg; ++a) {
      if (side[2 + a]) witness = witness | neg[a].set;
    }
    Fail(ErrorCode::kInvalidInput,
         "f(" + witness.ToString() + ") = " + std::to_string(f(witness)) +
             " < 0; the input is not nonnegative");
  }
  Hypergraph g(f.m());
  for (std::size_t b = 0; b < singles.size(); ++b) {
    const double left = singles[b].weight - net.Flow(out_arcs[b]);
    if (left > 1e-12) g.Add(singles[b].set, left);
  }
  return PleWitness{std::move(g), s, 1};
}

PleWitness SupermodularPle(const ExplicitValuation& f,
                           std::span<const int> ordering, ItemSet s) {
  const int m = f.m();
  if (static_cast<int>(ordering.size()) != m) {
    Fail(ErrorCode::kInvalidInput, "ordering must list every item once");
  }
  std::vector<bool> seen(m, false);
  for (int j : ordering) {
    if (j < 0 || j >= m || seen[j]) {
      Fail(ErrorCode::kInvalidInput, "ordering is not a permutation");
    }
    seen[j] = true;
  }
  if (!s.FitsIn(m)) {
    Fail(ErrorCode::kInvalidInput, "target set outside the ground set");
  }
  const Restriction r = Restrict(f, s);
  const SupermodularDegreeResult dep = SupermodularDegree(r.valuation);
  std::vector<int> local_of(m, -1);
  for (std::size_t i = 0; i < r.items.size(); ++i) local_of[r.items[i]] = i;

  Hypergraph g(m);
  ItemSet before;
  for (int j : ordering) {
    if (!s.Contains(j)) continue;
    const double w = f(before.With(j)) - f(before);
    if (w < -1e-9) {
      Fail(ErrorCode::kNotMonotone, "negative marginal for item " +
                                        std::to_string(j) +
                                        "; the input is not monotone");
    }
    const ItemSet edge = Expand(dep.dependencies[local_of[j]], r.items).With(j);
    if (w > 1e-12) g.Add(edge, w);
    before = before.With(j);
  }
  return PleWitness{std::move(g), s, dep.degree + 1};
}

}  // namespace mph
