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
#include <vector>

#include <gtest/gtest.h>

#include "embsim/alignment.h"
#include "embsim/cca.h"
#include "embsim/error.h"
#include "embsim/synth.h"
#include "oracles.h"

namespace embsim {
namespace {

AlignedPair random_pair(Index n, Index d1, Index d2, std::uint64_t seed) {
  return AlignedPair(random_embedding(n, d1, seed), random_embedding(n, d2, seed + 1000));
}

// Pair whose right side shares a few latent directions with the left.
AlignedPair correlated_pair(Index n, Index d1, Index d2, std::uint64_t seed) {
  const EmbeddingMatrix a = random_embedding(n, d1, seed);
  const EmbeddingMatrix noise = random_embedding(n, d2, seed + 1);
  Eigen::MatrixXd right = noise.values();
  for (Index j = 0; j < std::min(d1, d2); ++j) {
    right.col(j) += (1.0 - 0.1 * j) * a.values().col(j);
  }
  return AlignedPair(a, EmbeddingMatrix(a.vocab(), right, "right"));
}

void expect_whitened(const Eigen::MatrixXd& u, double tol) {
  const Eigen::MatrixXd c = oracle::centered(u);
  const Eigen::MatrixXd cov = c.transpose() * c / static_cast<double>(u.rows());
  EXPECT_LE((cov - Eigen::MatrixXd::Identity(cov.rows(), cov.cols())).cwiseAbs().maxCoeff(),
            tol);
}

TEST(ZetaCca, Mean) {
  EXPECT_EQ(zeta_cca(std::vector<double>{1, 1, 1}), 1.0);
  EXPECT_EQ(zeta_cca(std::vector<double>{1.0, 0.5, 0.0}), 0.5);
}

TEST(CcaFit, SelfPairIsPerfect) {
  const EmbeddingMatrix e = random_embedding(2000, 10, 3);
  const CcaResult r = cca_fit(AlignedPair(e, e));
  ASSERT_EQ(r.k(), 10);
  for (double c : r.correlations) EXPECT_NEAR(c, 1.0, 1e-6);
  EXPECT_NEAR(r.zeta_cca, 1.0, 1e-6);
}

TEST(CcaFit, InvariantUnderInvertibleMap) {
  const EmbeddingMatrix base = random_embedding(4000, 20, 12);
  const SynthPair s = derive_pair(base, {4000, 20, {Transform::linear()}, 0.0, 13});
  const CcaResult r = cca_fit(s.pair);
  for (double c : r.correlations) EXPECT_NEAR(c, 1.0, 1e-6);
  EXPECT_NEAR(r.zeta_cca, 1.0, 1e-6);
}

TEST(CcaFit, MatchesReferenceOracle) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const AlignedPair p = correlated_pair(3000, 12, 9, seed);
    const auto expected = oracle::reference_cca(p.left().values(), p.right().values());
    const CcaResult r = cca_fit(p, {.regularization = 0.0});
    ASSERT_EQ(r.correlations.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(r.correlations[i], expected[i], 1e-9) << i;
    }
    // The default ridge is small enough not to move the answer.
    const CcaResult d = cca_fit(p);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(d.correlations[i], expected[i], 1e-6) << i;
    }
  }
}

TEST(CcaFit, ResultInvariants) {
  const AlignedPair p = correlated_pair(2500, 7, 11, 44);
  const CcaResult r = cca_fit(p);
  ASSERT_EQ(r.k(), 7);
  EXPECT_EQ(r.left_directions.rows(), 7);
  EXPECT_EQ(r.right_directions.rows(), 11);
  EXPECT_EQ(r.left_directions.cols(), 7);
  EXPECT_EQ(r.right_directions.cols(), 7);
  EXPECT_TRUE(std::is_sorted(r.correlations.rbegin(), r.correlations.rend()));
  for (double c : r.correlations) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0 + 1e-9);
  }
  EXPECT_NEAR(r.zeta_cca, oracle::mean(r.correlations), 1e-12);
  EXPECT_GT(r.left_ridge, 0.0);
  EXPECT_GT(r.right_ridge, 0.0);
  EXPECT_FALSE(r.regularization.has_value());

  // Sign convention: the largest-magnitude coefficient of each left
  // direction is positive.
  for (Index j = 0; j < r.k(); ++j) {
    Index at;
    r.left_directions.col(j).cwiseAbs().maxCoeff(&at);
    EXPECT_GT(r.left_directions(at, j), 0.0);
  }
}

TEST(Project, ReproducesCorrelationsAndWhitens) {
  const AlignedPair p = correlated_pair(3000, 8, 8, 5);
  const CcaResult r = cca_fit(p, {.regularization = 0.0});
  const CanonicalVariates v = project(r, p);
  ASSERT_EQ(v.left.cols(), r.k());
  for (Index i = 0; i < r.k(); ++i) {
    EXPECT_NEAR(oracle::pearson(v.left.col(i), v.right.col(i)), r.correlations[i], 1e-6);
  }
  expect_whitened(v.left, 1e-6);
  expect_whitened(v.right, 1e-6);
  for (Index i = 0; i < r.k(); ++i) {
    for (Index j = 0; j < r.k(); ++j) {
      if (i != j) EXPECT_NEAR(oracle::pearson(v.left.col(i), v.right.col(j)), 0.0, 1e-6);
    }
  }
}

TEST(Project, SelfPairGivesEqualVariatesUpToSign) {
  const EmbeddingMatrix e = random_embedding(1000, 10, 17);
  const AlignedPair p(e, e);
  const CanonicalVariates v = project(cca_fit(p), p);
  for (Index j = 0; j < v.left.cols(); ++j) {
    const double s = v.left.col(j).dot(v.right.col(j)) >= 0 ? 1.0 : -1.0;
    EXPECT_LE((v.left.col(j) - s * v.right.col(j)).cwiseAbs().maxCoeff(), 1e-6) << j;
  }
}

TEST(Project, DimensionMismatch) {
  const AlignedPair p = random_pair(200, 4, 4, 1);
  const CcaResult r = cca_fit(p);
  EXPECT_THROW(project(r, random_pair(200, 5, 4, 2)), InputError);
}

TEST(CcaFit, ScaleInvariance) {
  const AlignedPair p = correlated_pair(2000, 6, 6, 8);
  const CcaResult base = cca_fit(p, {.regularization = 0.0});
  for (double s : {0.5, 2.0, 1e3}) {
    const AlignedPair scaled(p.left(), EmbeddingMatrix(p.right().vocab(), s * p.right().values()));
    const CcaResult r0 = cca_fit(scaled, {.regularization = 0.0});
    for (Index i = 0; i < base.k(); ++i) {
      EXPECT_NEAR(r0.correlations[i], base.correlations[i], 1e-9);
    }
    if (s <= 2.0) {
      const CcaResult rr = cca_fit(scaled, {.regularization = 1e-6});
      const CcaResult br = cca_fit(p, {.regularization = 1e-6});
      for (Index i = 0; i < base.k(); ++i) {
        EXPECT_NEAR(rr.correlations[i], br.correlations[i], 1e-6);
      }
    }
  }
}

TEST(CcaFit, ExchangeSymmetry) {
  const AlignedPair p = correlated_pair(2000, 9, 5, 21);
  const CcaResult a = cca_fit(p, {.regularization = 0.0});
  const CcaResult b = cca_fit(p.swapped(), {.regularization = 0.0});
  ASSERT_EQ(a.k(), b.k());
  for (Index i = 0; i < a.k(); ++i) EXPECT_NEAR(a.correlations[i], b.correlations[i], 1e-9);
}

TEST(CcaFit, LeadingCorrelationDominatesKappa) {
  const AlignedPair p = correlated_pair(2000, 8, 8, 30);
  const CcaResult r = cca_fit(p, {.regularization = 0.0});
  const CorrelationMatrix k = correlation_matrix(p);
  EXPECT_GE(r.correlations[0], k.values.cwiseAbs().maxCoeff() - 1e-6);
  EXPECT_GE(r.zeta_cca, one_to_one_score(k).zeta_1to1 - 1e-6);
}

TEST(CcaFit, SingularCovarianceAtZeroRidge) {
  Eigen::MatrixXd v = random_embedding(300, 4, 1).values();
  v.col(3) = v.col(0) + v.col(1);
  const EmbeddingMatrix e(random_embedding(300, 4, 1).vocab(), v);
  const AlignedPair p(e, random_embedding(300, 3, 2));
  EXPECT_THROW(cca_fit(p, {.regularization = 0.0}), NumericalError);
  // The default ridge keeps the fit alive.
  const CcaResult r = cca_fit(p);
  for (double c : r.correlations) EXPECT_TRUE(std::isfinite(c));
}

TEST(CcaFit, ConstantColumn) {
  Eigen::MatrixXd v = random_embedding(300, 4, 1).values();
  v.col(2).setConstant(1.5);
  const EmbeddingMatrix e(random_embedding(300, 4, 1).vocab(), v);
  const AlignedPair p(e, random_embedding(300, 4, 2));

  // The default ridge keeps the direction; it carries no correlation.
  const CcaResult kept = cca_fit(p);
  EXPECT_EQ(kept.k(), 4);
  EXPECT_NEAR(kept.correlations.back(), 0.0, 1e-6);

  // A ridge too small to lift it above the floor drops it with a warning.
  const CcaResult dropped = cca_fit(p, {.regularization = 1e-20});
  EXPECT_EQ(dropped.dropped_left, 1);
  EXPECT_EQ(dropped.dropped_right, 0);
  EXPECT_EQ(dropped.k(), 3);
  EXPECT_FALSE(dropped.warnings.empty());

  EXPECT_THROW(cca_fit(p, {.regularization = 0.0}), NumericalError);
}

TEST(CcaFit, WarnsWhenRowsDoNotExceedDims) {
  const CcaResult r = cca_fit(random_pair(6, 3, 6, 1), {.regularization = 1e-3});
  EXPECT_FALSE(r.warnings.empty());
}

TEST(CcaFit, Rejections) {
  EXPECT_THROW(cca_fit(random_pair(100, 3, 3, 1), {.regularization = -1.0}), InputError);
}

TEST(CcaFit, RandomBaselineNearOracle) {
  const AlignedPair p = random_pair(10000, 50, 50, 7);
  const auto expected = oracle::reference_cca(p.left().values(), p.right().values());
  const CcaResult r = cca_fit(p);
  EXPECT_NEAR(r.zeta_cca, oracle::mean(expected), 1e-6);
  EXPECT_LT(r.zeta_cca, 0.1);
}

TEST(CcaFit, IndependentOfThreadCount) {
  const AlignedPair p = correlated_pair(5000, 30, 25, 2);
  const CcaResult a = cca_fit(p, {.threads = 1});
  const CcaResult b = cca_fit(p, {.threads = 4});
  EXPECT_EQ(a.correlations, b.correlations);
  EXPECT_TRUE((a.left_directions.array() == b.left_directions.array()).all());
}

}  // namespace
}  // namespace embsim
