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

#include "embsim/column_stats.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "embsim/error.h"
#include "kernels.h"

namespace embsim {
namespace {

double correlation_from_sums(double sxy, double sxx, double syy) {
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double sorted_median(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Linear-interpolated quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("pearson: inputs differ in length (" +
                     std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw InputError("pearson: need at least 2 observations");
  if (kernels::is_constant(x) || kernels::is_constant(y)) return {0.0, true};
  const double mx = kernels::compensated_mean(x);
  const double my = kernels::compensated_mean(y);
  const double sxx = kernels::centered_cross_sum(x, mx, x, mx);
  const double syy = kernels::centered_cross_sum(y, my, y, my);
  const double sxy = kernels::centered_cross_sum(x, mx, y, my);
  if (sxx <= 0.0 || syy <= 0.0) return {0.0, true};
  return {correlation_from_sums(sxy, sxx, syy), false};
}

double column_mean(std::span<const double> x) {
  if (x.empty()) throw InputError("column_mean: empty input");
  return kernels::compensated_mean(x);
}

double column_stddev(std::span<const double> x) {
  const double m = column_mean(x);
  return std::sqrt(kernels::centered_cross_sum(x, m, x, m) /
                   static_cast<double>(x.size()));
}

CrossMoments compute_moments(const AlignedPair& pair,
                             const MomentsOptions& options) {
  const Eigen::MatrixXd& left = pair.left().values();
  const Eigen::MatrixXd& right = pair.right().values();

  CrossMoments m;
  m.n = left.rows();
  m.left_name = pair.left().name();
  m.right_name = pair.right().name();

  auto side_stats = [](const EmbeddingMatrix& e, Eigen::VectorXd& mean,
                       Eigen::VectorXd& sum_squares,
                       std::vector<bool>& constant) {
    mean.resize(e.dims());
    sum_squares.resize(e.dims());
    constant.assign(static_cast<std::size_t>(e.dims()), false);
    for (Index d = 0; d < e.dims(); ++d) {
      const auto col = e.column(d);
      mean(d) = kernels::compensated_mean(col);
      sum_squares(d) = kernels::centered_cross_sum(col, mean(d), col, mean(d));
      constant[static_cast<std::size_t>(d)] =
          kernels::is_constant(col) || sum_squares(d) <= 0.0;
    }
  };
  side_stats(pair.left(), m.left_mean, m.left_sum_squares, m.left_constant);
  side_stats(pair.right(), m.right_mean, m.right_sum_squares, m.right_constant);

  kernels::centered_cross_matrix(left, m.left_mean, right, m.right_mean,
                                 options.threads, m.cross);
  if (options.within_side) {
    m.left_gram.emplace();
    m.right_gram.emplace();
    kernels::centered_gram_matrix(left, m.left_mean, options.threads,
                                  *m.left_gram);
    kernels::centered_gram_matrix(right, m.right_mean, options.threads,
                                  *m.right_gram);
  }
  return m;
}

std::vector<double> CorrelationMatrix::flattened() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) out.push_back(values(i, j));
  }
  return out;
}

CorrelationMatrix correlation_matrix(const CrossMoments& m) {
  CorrelationMatrix kappa;
  kappa.left_name = m.left_name;
  kappa.right_name = m.right_name;
  kappa.values.resize(m.cross.rows(), m.cross.cols());
  for (Index i = 0; i < m.cross.rows(); ++i) {
    if (m.left_constant[static_cast<std::size_t>(i)]) {
      kappa.degenerate_left.push_back(i);
    }
  }
  for (Index j = 0; j < m.cross.cols(); ++j) {
    if (m.right_constant[static_cast<std::size_t>(j)]) {
      kappa.degenerate_right.push_back(j);
    }
  }
  for (Index j = 0; j < m.cross.cols(); ++j) {
    for (Index i = 0; i < m.cross.rows(); ++i) {
      const bool degenerate = m.left_constant[static_cast<std::size_t>(i)] ||
                              m.right_constant[static_cast<std::size_t>(j)];
      kappa.values(i, j) =
          degenerate ? 0.0
                     : correlation_from_sums(m.cross(i, j),
                                             m.left_sum_squares(i),
                                             m.right_sum_squares(j));
    }
  }
  return kappa;
}

CorrelationMatrix correlation_matrix(const AlignedPair& pair,
                                     unsigned threads) {
  if (pair.shared_count() < 2) {
    throw InputError("correlation matrix needs at least 2 shared words");
  }
  return correlation_matrix(compute_moments(pair, {.threads = threads}));
}

HistogramSummary histogram(std::span<const double> values, int bins,
                           bool with_kde) {
  if (values.empty()) throw InputError("histogram: empty input");
  if (bins < 1) throw InputError("histogram: bins must be >= 1");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double lo = sorted.front(), hi = sorted.back();
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }

  HistogramSummary h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.bin_edges[static_cast<std::size_t>(b)] = lo + b * width;
  h.bin_edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : sorted) {
    int b = static_cast<int>(std::floor((v - lo) / width));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  h.median = sorted_median(sorted);

  if (with_kde && sorted.size() >= 2) {
    const double n = static_cast<double>(sorted.size());
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double iqr =
        sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    h.bandwidth = 0.9 * spread * std::pow(n, -0.2);
    if (h.bandwidth > 0.0) {
      const double x0 = sorted.front() - 3.0 * h.bandwidth;
      const double x1 = sorted.back() + 3.0 * h.bandwidth;
      const double step = (x1 - x0) / (kKdePoints - 1);
      const double norm = 1.0 / (n * h.bandwidth * std::sqrt(2.0 * std::numbers::pi));
      h.kde_points.reserve(kKdePoints);
      for (int p = 0; p < kKdePoints; ++p) {
        const double x = x0 + p * step;
        double density = 0.0;
        for (double v : sorted) {
          const double z = (x - v) / h.bandwidth;
          density += std::exp(-0.5 * z * z);
        }
        h.kde_points.emplace_back(x, density * norm);
      }
    }
  }
  return h;
}

}  // namespace embsim
