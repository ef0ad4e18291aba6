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

// Compensated, lane-parallel accumulation of centered products. Every
// consumer of column moments goes through these routines so that a single
// Pearson coefficient and the same entry of a correlation matrix are
// bit-identical.

#ifndef EMBSIM_SRC_KERNELS_H_
#define EMBSIM_SRC_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace embsim::kernels {

// Element g of a column always lands in lane g % kLanes.
inline constexpr std::size_t kLanes = 8;
// Rows processed per cache block; a multiple of kLanes.
inline constexpr std::size_t kRowBlock = 2048;
static_assert(kRowBlock % kLanes == 0);

// Kahan accumulator with kLanes independent lanes.
struct LaneSum {
  double sum[kLanes] = {};
  double comp[kLanes] = {};

  // Adds (x[i]-mx)*(y[i]-my) for i in [0, n). The first element belongs to
  // lane 0, so callers must pass chunks starting at multiples of kLanes.
  void add_centered_products(const double* x, double mx, const double* y,
                             double my, std::size_t n);
  void add_values(const double* x, std::size_t n);

  // Lanes merged in fixed order.
  double total() const;
};

double compensated_mean(std::span<const double> x);

// Sum of (x[i]-mx)*(y[i]-my) over the whole column.
double centered_cross_sum(std::span<const double> x, double mx,
                          std::span<const double> y, double my);

bool is_constant(std::span<const double> x);

// out(i, j) = centered cross sum of left column i and right column j.
// Deterministic for any worker count.
void centered_cross_matrix(const Eigen::MatrixXd& left,
                           const Eigen::VectorXd& left_mean,
                           const Eigen::MatrixXd& right,
                           const Eigen::VectorXd& right_mean, unsigned threads,
                           Eigen::MatrixXd& out);

// Symmetric variant for a matrix against itself (upper tiles, mirrored).
void centered_gram_matrix(const Eigen::MatrixXd& x, const Eigen::VectorXd& mean,
                          unsigned threads, Eigen::MatrixXd& out);

}  // namespace embsim::kernels

#endif  // EMBSIM_SRC_KERNELS_H_
