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

#include "embsim/cca.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "embsim/error.h"

namespace embsim {
namespace {

struct Whitener {
  Eigen::MatrixXd transform;  // D x r, columns V_i / sqrt(lambda_i)
  Index dropped = 0;
};

Whitener whiten(const Eigen::MatrixXd& covariance, double ridge,
                bool allow_drop, const std::string& side) {
  const Index dims = covariance.rows();
  Eigen::MatrixXd regularized = covariance;
  regularized.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(regularized);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("cca: eigendecomposition of the " + side +
                         " covariance failed");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const double largest = values(dims - 1);
  if (!(largest > 0.0)) {
    throw NumericalError("cca: the " + side + " covariance is zero");
  }
  const double floor = kEigenvalueFloor * largest;
  Index keep_from = 0;
  while (keep_from < dims && values(keep_from) < floor) ++keep_from;
  if (keep_from > 0 && !allow_drop) {
    throw NumericalError("cca: the " + side +
                         " covariance is numerically singular; use a "
                         "positive --regularization");
  }
  Whitener w;
  w.dropped = keep_from;
  const Index rank = dims - keep_from;
  // Descending eigenvalue order keeps the output independent of solver order.
  w.transform.resize(dims, rank);
  for (Index c = 0; c < rank; ++c) {
    const Index src = dims - 1 - c;
    w.transform.col(c) = solver.eigenvectors().col(src) / std::sqrt(values(src));
  }
  return w;
}

}  // namespace

double zeta_cca(std::span<const double> correlations) {
  if (correlations.empty()) return 0.0;
  double sum = 0.0;
  for (double c : correlations) sum += c;
  return sum / static_cast<double>(correlations.size());
}

CcaResult cca_fit(const CrossMoments& m, const CcaOptions& options) {
  if (!m.left_gram || !m.right_gram) {
    throw InputError("cca: moments lack within-side sums of products");
  }
  if (options.regularization && !(*options.regularization >= 0.0)) {
    throw InputError("cca: regularization must be >= 0");
  }
  const double n = static_cast<double>(m.n);
  const Eigen::MatrixXd s11 = *m.left_gram / n;
  const Eigen::MatrixXd s22 = *m.right_gram / n;
  const Eigen::MatrixXd s12 = m.cross / n;
  if (!s11.allFinite() || !s22.allFinite() || !s12.allFinite()) {
    throw NumericalError("cca: non-finite covariance entries");
  }

  CcaResult result;
  result.regularization = options.regularization;
  if (options.regularization) {
    result.left_ridge = result.right_ridge = *options.regularization;
  } else {
    result.left_ridge = kDefaultRelativeRidge * s11.trace() / static_cast<double>(s11.rows());
    result.right_ridge = kDefaultRelativeRidge * s22.trace() / static_cast<double>(s22.rows());
  }
  const bool allow_drop = result.left_ridge > 0.0 && result.right_ridge > 0.0;

  const Index max_dims = std::max(s11.rows(), s22.rows());
  if (m.n <= max_dims) {
    std::ostringstream msg;
    msg << "shared vocabulary (" << m.n
        << ") does not exceed the dimension count (" << max_dims
        << "); canonical correlations are inflated";
    result.warnings.push_back(msg.str());
  }

  const Whitener left = whiten(s11, result.left_ridge, allow_drop, "left");
  const Whitener right = whiten(s22, result.right_ridge, allow_drop, "right");
  result.dropped_left = left.dropped;
  result.dropped_right = right.dropped;
  if (left.dropped > 0 || right.dropped > 0) {
    std::ostringstream msg;
    msg << "dropped " << left.dropped << " left and " << right.dropped
        << " right whitening directions below the eigenvalue floor";
    result.warnings.push_back(msg.str());
  }

  const Eigen::MatrixXd whitened =
      left.transform.transpose() * s12 * right.transform;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(whitened,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index k = std::min(whitened.rows(), whitened.cols());
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!sv.allFinite()) throw NumericalError("cca: SVD produced non-finite values");

  result.left_directions = left.transform * svd.matrixU().leftCols(k);
  result.right_directions = right.transform * svd.matrixV().leftCols(k);
  result.correlations.resize(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    result.correlations[static_cast<std::size_t>(i)] = std::clamp(sv(i), 0.0, 1.0);
    Index pivot = 0;
    result.left_directions.col(i).cwiseAbs().maxCoeff(&pivot);
    if (result.left_directions(pivot, i) < 0.0) {
      result.left_directions.col(i) *= -1.0;
      result.right_directions.col(i) *= -1.0;
    }
  }
  result.zeta_cca = zeta_cca(result.correlations);
  result.left_mean = m.left_mean;
  result.right_mean = m.right_mean;
  return result;
}

CcaResult cca_fit(const AlignedPair& pair, const CcaOptions& options) {
  if (pair.shared_count() < 2) {
    throw InputError("cca: need at least 2 shared words");
  }
  return cca_fit(compute_moments(pair, {.within_side = true,
                                        .threads = options.threads}),
                 options);
}

CanonicalVariates project(const CcaResult& result, const AlignedPair& pair) {
  const Eigen::MatrixXd& x = pair.left().values();
  const Eigen::MatrixXd& y = pair.right().values();
  if (x.cols() != result.left_directions.rows() ||
      y.cols() != result.right_directions.rows()) {
    throw InputError("cca project: pair dimensions do not match the fit");
  }
  CanonicalVariates out;
  out.left = (x.rowwise() - result.left_mean.transpose()) * result.left_directions;
  out.right =
      (y.rowwise() - result.right_mean.transpose()) * result.right_directions;
  return out;
}

}  // namespace embsim
