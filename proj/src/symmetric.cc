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
#include <limits>
#include <string>
#include <vector>

#include "mph/ple.h"
#include "mph/simplex.h"

namespace mph {
namespace {

double Slack(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

void CheckWorstcaseArgs(int m, int r) {
  if (m < 3 || m > 200) {
    Fail(ErrorCode::kInvalidInput, "worst-case LP needs 3 <= m <= 200");
  }
  if (r < 1 || r > 6 || r > m) {
    Fail(ErrorCode::kInvalidInput, "worst-case LP needs 1 <= r <= min(6, m)");
  }
}

// Monotonicity row t in rescaled variables u_i = x_i C(m-1, i-1).
double MonotoneCoefficient(int m, int t, int i) {
  return BinomialRatio(t, m - 1, i - 1);
}

}  // namespace

SymmetricPleWitness CanonicalSymmetricPle(const SymmetricValuation& f, int r) {
  const int m = f.m();
  if (r < 1 || r > m) {
    Fail(ErrorCode::kInvalidInput, "canonical rank must lie in [1, m]");
  }
  SymmetricPleWitness w;
  w.m = m;
  w.r = r;
  w.edge_weight = f.At(m) / Binomial(m, r);
  w.envelope_profile.assign(m + 1, 0.0);
  w.valid = true;
  w.worst_excess = -std::numeric_limits<double>::infinity();
  for (int t = 0; t <= m; ++t) {
    const double g = t == m ? f.At(m) : BinomialRatio(t, m, r) * f.At(m);
    w.envelope_profile[t] = g;
    const double excess = g - f.At(t);
    if (excess > w.worst_excess) {
      w.worst_excess = excess;
      w.worst_t = t;
    }
    if (excess > Slack(f.At(t))) w.valid = false;
  }
  return w;
}

PleWitness SymmetricPleWitness::Materialize() const {
  if (m > 16) Fail(ErrorCode::kCapacity, "materialize supports m <= 16");
  Hypergraph g(m);
  const ItemSet full = ItemSet::Full(m);
  if (edge_weight != 0.0) {
    ForEachSubset(full, [&](ItemSet e) {
      if (e.size() == r) g.Set(e, edge_weight);
    });
  }
  return PleWitness{std::move(g), full, r};
}

int SymmetricMphLevel(const SymmetricValuation& f) {
  const int m = f.m();
  if (std::abs(f.At(0)) > 1e-12) {
    Fail(ErrorCode::kInvalidInput, "symmetric level needs f(0) = 0");
  }
  if (!f.Monotone(1e-12)) {
    Fail(ErrorCode::kInvalidInput, "symmetric level needs a monotone profile");
  }
  for (int r = 1; r < m; ++r) {
    bool ok = true;
    for (int t = r + 1; t <= m && ok; ++t) {
      for (int c = r; c < t && ok; ++c) {
        if (BinomialRatio(c, t, r) * f.At(t) > f.At(c) + Slack(f.At(t))) {
          ok = false;
        }
      }
    }
    if (ok) return r;
  }
  return std::max(m, 1);
}

SymmetricLpCertificate SymmetricWorstcaseLp(int m, int r) {
  CheckWorstcaseArgs(m, r);
  // Columns: u+_1..u+_r, u-_1..u-_r. Rows: monotonicity t = 0..m-1, then the
  // scaling equality split into <= and >=.
  const int n = 2 * r;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (int t = 0; t < m; ++t) {
    std::vector<double> row(n, 0.0);
    for (int i = 1; i <= r; ++i) {
      const double coef = MonotoneCoefficient(m, t, i);
      row[i - 1] = -coef;
      row[r + i - 1] = coef;
    }
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  std::vector<double> scale(n, 0.0);
  for (int i = 1; i <= r; ++i) {
    scale[i - 1] = static_cast<double>(m) / i;
    scale[r + i - 1] = -static_cast<double>(m) / i;
  }
  a.push_back(scale);
  b.push_back(m);
  for (double& x : scale) x = -x;
  a.push_back(scale);
  b.push_back(-m);

  std::vector<double> c(n, 0.0);
  for (int i = 1; i <= r; ++i) {
    const double obj = static_cast<double>(m - i) / i;
    c[i - 1] = -obj;
    c[r + i - 1] = obj;
  }
  LpResult<double> res = SolveLp(a, b, c);
  if (res.status != LpStatus::kOptimal) {
    Fail(ErrorCode::kSolver, std::string("worst-case LP ended with status ") +
                                 LpStatusName(res.status));
  }
  SymmetricLpCertificate cert;
  cert.m = m;
  cert.r = r;
  cert.primal_value = -res.objective;
  for (int i = 1; i <= r; ++i) {
    const double u = res.x[i - 1] - res.x[r + i - 1];
    cert.primal_x.push_back(u / Binomial(m - 1, i - 1));
  }
  cert.dual_y.assign(res.duals.begin(), res.duals.begin() + m);
  cert.dual_z = res.duals[m + 1] - res.duals[m];
  cert.dual_value = m * cert.dual_z;
  cert.gap = std::abs(cert.primal_value - cert.dual_value);
  for (int i = 1; i <= r; ++i) {
    double lhs = (static_cast<double>(m) / i) * cert.dual_z;
    for (int t = 0; t < m; ++t) lhs += MonotoneCoefficient(m, t, i) * cert.dual_y[t];
    const double rhs = static_cast<double>(m - i) / i;
    cert.dual_residual = std::max(cert.dual_residual, std::abs(lhs - rhs));
  }
  return cert;
}

DualFeasibility SymmetricDualAtZ(int m, int r, double z) {
  CheckWorstcaseArgs(m, r);
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> rhs(r + 1);
  for (int i = 1; i <= r; ++i) {
    std::vector<double> row(m);
    for (int t = 0; t < m; ++t) row[t] = MonotoneCoefficient(m, t, i);
    rhs[i] = static_cast<double>(m - i) / i - (static_cast<double>(m) / i) * z;
    a.push_back(row);
    b.push_back(rhs[i]);
    for (double& x : row) x = -x;
    a.push_back(std::move(row));
    b.push_back(-rhs[i]);
  }
  LpResult<double> res = SolveLp(a, b, std::vector<double>(m, 0.0));
  DualFeasibility out;
  if (res.status != LpStatus::kOptimal) return out;
  out.y = res.x;
  for (int i = 1; i <= r; ++i) {
    double lhs = 0.0;
    for (int t = 0; t < m; ++t) lhs += MonotoneCoefficient(m, t, i) * out.y[t];
    out.residual = std::max(out.residual, std::abs(lhs - rhs[i]));
  }
  const double min_y = *std::min_element(out.y.begin(), out.y.end());
  out.feasible = out.residual <= 1e-7 && min_y >= -1e-12;
  return out;
}

}  // namespace mph
