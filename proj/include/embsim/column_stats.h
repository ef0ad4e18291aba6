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

#ifndef EMBSIM_COLUMN_STATS_H_
#define EMBSIM_COLUMN_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "embsim/embedding.h"

namespace embsim {

// Pearson correlation with population (1/n) normalization throughout.
// A constant input has no variance: the value is defined as 0 and
// `degenerate` is set.
struct PearsonResult {
  double value = 0.0;
  bool degenerate = false;
};

// Requires x.size() == y.size() >= 2; InputError otherwise. Symmetric in its
// arguments bit for bit, and clamped to [-1, 1].
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

double column_mean(std::span<const double> x);
// Population standard deviation.
double column_stddev(std::span<const double> x);

// Centered first and second moments of an aligned pair. Sums are not divided
// by n; covariance is cross / n.
struct CrossMoments {
  Index n = 0;
  std::string left_name, right_name;
  Eigen::VectorXd left_mean, right_mean;
  Eigen::VectorXd left_sum_squares, right_sum_squares;
  std::vector<bool> left_constant, right_constant;
  Eigen::MatrixXd cross;  // D1 x D2
  // Full within-side sums of products; present when requested.
  std::optional<Eigen::MatrixXd> left_gram, right_gram;
};

struct MomentsOptions {
  bool within_side = false;  // also compute left_gram / right_gram
  unsigned threads = 0;      // 0: resolve_threads default
};

CrossMoments compute_moments(const AlignedPair& pair,
                             const MomentsOptions& options = {});

// kappa(i, j): Pearson correlation of left column i with right column j.
struct CorrelationMatrix {
  Eigen::MatrixXd values;  // D1 x D2, entries in [-1, 1]
  std::string left_name, right_name;
  std::vector<Index> degenerate_left, degenerate_right;  // constant columns

  // Row-major flattening: all D1*D2 entries.
  std::vector<double> flattened() const;
};

// Requires shared_count >= 2. Entry (i, j) equals
// pearson(left.column(i), right.column(j)) exactly.
CorrelationMatrix correlation_matrix(const AlignedPair& pair,
                                     unsigned threads = 0);
CorrelationMatrix correlation_matrix(const CrossMoments& moments);

inline constexpr int kDefaultHistogramBins = 60;
inline constexpr int kKdePoints = 256;

struct HistogramSummary {
  std::vector<double> bin_edges;  // bins + 1 ascending edges
  std::vector<long long> counts;
  double median = 0.0;
  double bandwidth = 0.0;  // Silverman; 0 when no KDE was computed
  std::vector<std::pair<double, double>> kde_points;  // (x, density)
};

// Equal-width bins over [min, max] (widened by 0.5 either side when all
// values coincide); the maximum falls in the last bin. The median uses the
// midpoint rule for even counts. With `with_kde`, a Gaussian KDE with
// Silverman's bandwidth is evaluated at kKdePoints evenly spaced points over
// [min - 3h, max + 3h]; it is skipped when the bandwidth is zero.
// Throws InputError on empty input or bins < 1.
HistogramSummary histogram(std::span<const double> values,
                           int bins = kDefaultHistogramBins,
                           bool with_kde = false);

}  // namespace embsim

#endif  // EMBSIM_COLUMN_STATS_H_
