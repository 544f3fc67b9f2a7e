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

#ifndef MPH_MAX_FLOW_H_
#define MPH_MAX_FLOW_H_

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace mph {

// Dinic's algorithm on real capacities. Residuals at or below eps count as
// saturated, which keeps floating-point leftovers from creating phantom
// augmenting paths.
class MaxFlow {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  explicit MaxFlow(int nodes, double eps = 1e-12)
      : graph_(nodes), level_(nodes), next_(nodes), eps_(eps) {}

  // Returns an arc id usable with Flow().
  int AddArc(int from, int to, double capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity, 0.0});
    graph_[from].push_back(id);
    arcs_.push_back({from, 0.0, 0.0});
    graph_[to].push_back(id + 1);
    return id;
  }

  double Run(int source, int sink) {
    double total = 0.0;
    while (Bfs(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double pushed = Dfs(source, sink, kInfinity);
        if (pushed <= eps_) break;
        total += pushed;
      }
    }
    return total;
  }

  double Flow(int arc) const { return arcs_[arc].flow; }

  // Nodes reachable from the source in the final residual graph.
  std::vector<bool> SourceSide(int source) const {
    std::vector<bool> seen(graph_.size(), false);
    std::vector<int> stack = {source};
    seen[source] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : graph_[u]) {
        const Arc& a = arcs_[id];
        if (!seen[a.to] && Residual(a) > eps_) {
          seen[a.to] = true;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    double capacity;
    double flow;
  };

  static double Residual(const Arc& a) { return a.capacity - a.flow; }

  bool Bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int id : graph_[u]) {
        const Arc& a = arcs_[id];
        if (level_[a.to] < 0 && Residual(a) > eps_) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double Dfs(int u, int sink, double limit) {
    if (u == sink) return limit;
    for (int& i = next_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      const int id = graph_[u][i];
      Arc& a = arcs_[id];
      if (level_[a.to] != level_[u] + 1 || Residual(a) <= eps_) continue;
      const double pushed = Dfs(a.to, sink, std::min(limit, Residual(a)));
      if (pushed > eps_) {
        a.flow += pushed;
        arcs_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<int>> graph_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<int> next_;
  double eps_;
};

}  // namespace mph

#endif  // MPH_MAX_FLOW_H_
