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

#ifndef EMBSIM_CCA_H_
#define EMBSIM_CCA_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "embsim/column_stats.h"
#include "embsim/embedding.h"

namespace embsim {

// Default per-side ridge is this factor times trace(covariance) / D.
inline constexpr double kDefaultRelativeRidge = 1e-8;
// Whitening eigenvalues below this fraction of the largest are dropped.
inline constexpr double kEigenvalueFloor = 1e-12;

struct CcaOptions {
  // Absolute ridge added to both covariances before whitening. When unset,
  // each side gets kDefaultRelativeRidge * trace(cov) / D.
  std::optional<double> regularization;
  unsigned threads = 0;
};

// Canonical correlation analysis between the two sides of an aligned pair.
//
// Canonical correlations are the singular values of
//   (S11 + r1 I)^{-1/2} S12 (S22 + r2 I)^{-1/2}
// with population covariances, so they come out in descending order. Each
// pair of directions is signed so that the largest-magnitude coefficient of
// the left direction is positive; the right direction follows it, keeping
// every correlation non-negative.
struct CcaResult {
  Eigen::MatrixXd left_directions;   // D1 x k
  Eigen::MatrixXd right_directions;  // D2 x k
  std::vector<double> correlations;  // length k, descending, in [0, 1]
  double zeta_cca = 0.0;             // mean of correlations

  std::optional<double> regularization;  // as requested
  double left_ridge = 0.0;               // as applied
  double right_ridge = 0.0;
  Index dropped_left = 0;   // whitening directions dropped per side
  Index dropped_right = 0;

  Eigen::VectorXd left_mean, right_mean;  // used by project()
  std::vector<std::string> warnings;

  Index k() const { return static_cast<Index>(correlations.size()); }
};

// Throws InputError for negative regularization, NumericalError when a
// covariance is singular at regularization 0 or non-finite values appear.
CcaResult cca_fit(const AlignedPair& pair, const CcaOptions& options = {});

// Same fit from precomputed moments; requires within-side grams.
CcaResult cca_fit(const CrossMoments& moments, const CcaOptions& options = {});

// Arithmetic mean of the canonical correlations.
double zeta_cca(std::span<const double> correlations);
inline double zeta_cca(const CcaResult& result) {
  return zeta_cca(result.correlations);
}

// Canonical variates U = (X - mean) P and V = (Y - mean) Q.
struct CanonicalVariates {
  Eigen::MatrixXd left;   // n x k
  Eigen::MatrixXd right;  // n x k
};

// Throws InputError when the pair's dimensions do not match the fit.
CanonicalVariates project(const CcaResult& result, const AlignedPair& pair);

}  // namespace embsim

#endif  // EMBSIM_CCA_H_
