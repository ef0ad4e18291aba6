// Copyright 2026 The embsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "embsim/alignment.h"
#include "embsim/error.h"

namespace embsim {
namespace {

// Minimum-cost assignment with shortest augmenting paths and dual
// potentials. Rows are 1-based internally; row_of_col[j] is the row matched
// to column j. On return cost(i, j) - u[i] - v[j] >= 0 with equality on
// matched pairs (up to rounding).
void hungarian(const Eigen::MatrixXd& cost, std::vector<double>& u,
               std::vector<double>& v, std::vector<Index>& row_of_col) {
  const Index n = cost.rows();
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(static_cast<std::size_t>(n + 1), 0.0);
  v.assign(static_cast<std::size_t>(n + 1), 0.0);
  row_of_col.assign(static_cast<std::size_t>(n + 1), 0);
  std::vector<Index> way(static_cast<std::size_t>(n + 1), 0);
  std::vector<double> minv(static_cast<std::size_t>(n + 1));
  std::vector<char> used(static_cast<std::size_t>(n + 1));

  for (Index i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    Index j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const Index i0 = row_of_col[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const Index j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
}

double total_in_column_order(const Eigen::MatrixXd& w,
                             const std::vector<Index>& assignment) {
  double total = 0.0;
  for (std::size_t d = 0; d < assignment.size(); ++d) {
    total += w(assignment[d], static_cast<Index>(d));
  }
  return total;
}

// Rewrites a perfect matching on the tight (zero reduced cost) edges into the
// lexicographically smallest perfect matching on those edges. Every optimal
// assignment uses only tight edges, so this picks the smallest optimum.
// `tight(r, c)`: column r may take row c. match[r] is the row of column r.
void lexicographic_repair(const std::vector<std::vector<char>>& tight,
                          std::vector<Index>& match) {
  const std::size_t n = match.size();
  std::vector<Index> col_of_row(n);
  for (std::size_t r = 0; r < n; ++r) {
    col_of_row[static_cast<std::size_t>(match[r])] = static_cast<Index>(r);
  }

  std::vector<Index> parent_col(n);
  std::vector<char> seen_row(n);
  for (std::size_t d = 0; d < n; ++d) {
    const Index current = match[d];
    for (Index cand = 0; cand < current; ++cand) {
      const std::size_t c = static_cast<std::size_t>(cand);
      if (!tight[d][c]) continue;
      const std::size_t holder = static_cast<std::size_t>(col_of_row[c]);
      if (holder < d) continue;  // fixed by an earlier column

      // Column `holder` loses `cand`; find an alternating path from it to
      // the row `current` that column d releases, using only columns > d.
      std::fill(seen_row.begin(), seen_row.end(), 0);
      seen_row[c] = 1;
      std::deque<std::size_t> queue{holder};
      parent_col.assign(n, -1);
      std::size_t reached = n;
      while (!queue.empty() && reached == n) {
        const std::size_t col = queue.front();
        queue.pop_front();
        for (std::size_t row = 0; row < n; ++row) {
          if (!tight[col][row] || seen_row[row]) continue;
          const std::size_t owner = static_cast<std::size_t>(col_of_row[row]);
          if (row != static_cast<std::size_t>(current) && owner <= d) continue;
          seen_row[row] = 1;
          parent_col[row] = static_cast<Index>(col);
          if (row == static_cast<std::size_t>(current)) {
            reached = row;
            break;
          }
          queue.push_back(owner);
        }
      }
      if (reached == n) continue;

      // Flip the path: each column on it takes the row it reached.
      std::size_t row = reached;
      while (true) {
        const std::size_t col = static_cast<std::size_t>(parent_col[row]);
        const Index previous = match[col];
        match[col] = static_cast<Index>(row);
        col_of_row[row] = static_cast<Index>(col);
        if (col == holder) break;
        row = static_cast<std::size_t>(previous);
      }
      match[d] = cand;
      col_of_row[c] = static_cast<Index>(d);
      break;
    }
  }
}

}  // namespace

Assignment max_weight_assignment(const Eigen::MatrixXd& weights) {
  if (weights.size() == 0) throw InputError("assignment: empty weight matrix");
  if (weights.rows() != weights.cols()) {
    throw InputError("assignment: weight matrix must be square, got " +
                     std::to_string(weights.rows()) + "x" +
                     std::to_string(weights.cols()));
  }
  if (!weights.allFinite()) {
    throw InputError("assignment: weight matrix has non-finite entries");
  }

  const Index n = weights.rows();
  // Hungarian rows are our columns d; Hungarian columns are weight rows.
  const double top = weights.maxCoeff();
  const Eigen::MatrixXd cost = (top - weights.array()).matrix().transpose();

  std::vector<double> u, v;
  std::vector<Index> row_of_col;
  hungarian(cost, u, v, row_of_col);

  std::vector<Index> match(static_cast<std::size_t>(n));
  for (Index j = 1; j <= n; ++j) {
    match[static_cast<std::size_t>(row_of_col[j] - 1)] = j - 1;
  }

  const double range = std::max(1.0, top - weights.minCoeff());
  const double tolerance = 1e-10 * range;
  std::vector<std::vector<char>> tight(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n)));
  for (Index d = 0; d < n; ++d) {
    for (Index r = 0; r < n; ++r) {
      tight[d][r] = cost(d, r) - u[d + 1] - v[r + 1] <= tolerance;
    }
    tight[d][match[d]] = 1;
  }

  Assignment result;
  result.assignment = match;
  result.total_weight = total_in_column_order(weights, match);

  std::vector<Index> repaired = match;
  lexicographic_repair(tight, repaired);
  const double repaired_total = total_in_column_order(weights, repaired);
  if (repaired_total >= result.total_weight) {
    result.assignment = std::move(repaired);
    result.total_weight = repaired_total;
  }
  return result;
}

}  // namespace embsim
