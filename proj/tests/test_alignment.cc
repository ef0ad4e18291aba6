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
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "embsim/alignment.h"
#include "embsim/error.h"
#include "embsim/synth.h"
#include "oracles.h"

namespace embsim {
namespace {

Eigen::MatrixXd random_weights(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = 2.0 * rng.uniform() - 1.0;
  }
  return w;
}

// Small integers: many optimal permutations share the best total.
Eigen::MatrixXd tied_weights(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = static_cast<double>(rng.below(3));
  }
  return w;
}

std::vector<int> as_int(const std::vector<Index>& a) { return {a.begin(), a.end()}; }

TEST(MaxWeightAssignment, TwoByTwo) {
  Eigen::MatrixXd w(2, 2);
  w << 1, 0, 0, 1;
  Assignment a = max_weight_assignment(w);
  EXPECT_EQ(a.assignment, (std::vector<Index>{0, 1}));
  EXPECT_EQ(a.total_weight, 2.0);
  w << 0, 1, 1, 0;
  a = max_weight_assignment(w);
  EXPECT_EQ(a.assignment, (std::vector<Index>{1, 0}));
  EXPECT_EQ(a.total_weight, 2.0);
}

TEST(MaxWeightAssignment, MatchesBruteForce) {
  for (int n : {1, 2, 3, 4, 5, 6, 7}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Eigen::MatrixXd w = random_weights(n, 1000 * n + seed);
      const auto expected = oracle::brute_force_assignment(w);
      const Assignment got = max_weight_assignment(w);
      EXPECT_EQ(got.total_weight, expected.total) << "n=" << n << " seed=" << seed;
      EXPECT_EQ(as_int(got.assignment), expected.assignment);
    }
  }
}

TEST(MaxWeightAssignment, TiesResolveToLexicographicallySmallest) {
  for (int n : {2, 3, 4, 5, 6, 7}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Eigen::MatrixXd w = tied_weights(n, 7000 * n + seed);
      const auto expected = oracle::brute_force_assignment(w);
      const Assignment got = max_weight_assignment(w);
      EXPECT_EQ(got.total_weight, expected.total);
      EXPECT_EQ(as_int(got.assignment), expected.assignment) << "n=" << n << " seed=" << seed;
    }
  }
  EXPECT_EQ(max_weight_assignment(Eigen::MatrixXd::Zero(4, 4)).assignment,
            (std::vector<Index>{0, 1, 2, 3}));
}

TEST(MaxWeightAssignment, HandlesNegativeAndLargeWeights) {
  Eigen::MatrixXd w = random_weights(6, 5) * 1e6;
  w.array() -= 3e6;
  EXPECT_EQ(max_weight_assignment(w).total_weight, oracle::brute_force_assignment(w).total);
}

TEST(MaxWeightAssignment, Rejections) {
  EXPECT_THROW(max_weight_assignment(Eigen::MatrixXd(0, 0)), InputError);
  EXPECT_THROW(max_weight_assignment(Eigen::MatrixXd::Zero(2, 3)), InputError);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
  w(1, 0) = std::nan("");
  EXPECT_THROW(max_weight_assignment(w), InputError);
  w(1, 0) = INFINITY;
  EXPECT_THROW(max_weight_assignment(w), InputError);
}

TEST(MaxWeightAssignment, LargeInstanceIsAPermutationAndBeatsIdentity) {
  const Eigen::MatrixXd w = random_weights(300, 77);
  const Assignment a = max_weight_assignment(w);
  std::vector<Index> sorted = a.assignment;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Index> iota(300);
  std::iota(iota.begin(), iota.end(), 0);
  EXPECT_EQ(sorted, iota);
  EXPECT_GE(a.total_weight, w.trace());
  // No improving swap of two columns exists at an optimum.
  for (int d = 0; d < 300; d += 7) {
    for (int e = d + 1; e < 300; e += 11) {
      const double delta = w(a.assignment[e], d) + w(a.assignment[d], e) -
                           w(a.assignment[d], d) - w(a.assignment[e], e);
      EXPECT_LE(delta, 1e-12);
    }
  }
}

CorrelationMatrix kappa_of(const Eigen::MatrixXd& v) {
  CorrelationMatrix k;
  k.values = v;
  return k;
}

TEST(OneToOneScore, SelfComparison) {
  const EmbeddingMatrix e = random_embedding(2000, 12, 3);
  const Matching m = one_to_one_score(correlation_matrix(AlignedPair(e, e)));
  std::vector<Index> identity(12);
  std::iota(identity.begin(), identity.end(), 0);
  EXPECT_EQ(m.assignment, identity);
  EXPECT_NEAR(m.zeta_1to1, 1.0, 1e-12);
}

TEST(OneToOneScore, RecoversPermutation) {
  const EmbeddingMatrix base = random_embedding(3000, 15, 8);
  SynthSpec spec{3000, 15, {Transform::permute()}, 0.0, 9};
  const SynthPair s = derive_pair(base, spec);
  const Matching m = one_to_one_score(correlation_matrix(s.pair));
  ASSERT_TRUE(s.truth.assignment.has_value());
  EXPECT_EQ(m.assignment, *s.truth.assignment);
  EXPECT_EQ(m.assignment, s.truth.transforms[0].permutation);
  EXPECT_NEAR(m.zeta_1to1, 1.0, 1e-9);
}

TEST(OneToOneScore, Invariants) {
  const AlignedPair p(random_embedding(1500, 9, 1), random_embedding(1500, 9, 2));
  const CorrelationMatrix k = correlation_matrix(p);
  const Matching m = one_to_one_score(k);
  ASSERT_EQ(m.matched_correlations.size(), 9u);
  for (int d = 0; d < 9; ++d) {
    EXPECT_EQ(m.matched_correlations[d], k.values(m.assignment[d], d));
  }
  EXPECT_NEAR(m.zeta_1to1, oracle::mean(m.matched_correlations), 1e-12);
  EXPECT_GE(m.zeta_1to1, k.values.diagonal().mean() - 1e-15);
  const std::vector<double> sorted = m.sorted_descending();
  EXPECT_TRUE(std::is_sorted(sorted.rbegin(), sorted.rend()));
  EXPECT_FALSE(m.absolute);
}

TEST(OneToOneScore, MatchesBruteForceOnKappa) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AlignedPair p(random_embedding(300, 6, 2 * seed), random_embedding(300, 6, 2 * seed + 1));
    const CorrelationMatrix k = correlation_matrix(p);
    const auto expected = oracle::brute_force_assignment(k.values);
    EXPECT_EQ(as_int(one_to_one_score(k).assignment), expected.assignment);
  }
}

TEST(OneToOneScore, AbsoluteMode) {
  Eigen::MatrixXd v(2, 2);
  v << -0.9, 0.1, 0.2, 0.8;
  const Matching plain = one_to_one_score(kappa_of(v));
  EXPECT_EQ(plain.assignment, (std::vector<Index>{1, 0}));
  EXPECT_NEAR(plain.zeta_1to1, 0.15, 1e-15);
  const Matching abs = one_to_one_score(kappa_of(v), {.absolute = true});
  EXPECT_TRUE(abs.absolute);
  EXPECT_EQ(abs.assignment, (std::vector<Index>{0, 1}));
  EXPECT_EQ(abs.matched_correlations, (std::vector<double>{-0.9, 0.8}));
  EXPECT_NEAR(abs.zeta_1to1, -0.05, 1e-15);
  EXPECT_NEAR(abs.zeta_1to1_abs, 0.85, 1e-15);
}

TEST(OneToOneScore, SignFlipsRecoveredInAbsoluteMode) {
  const EmbeddingMatrix base = random_embedding(2000, 10, 4);
  const SynthPair s =
      derive_pair(base, {2000, 10, {Transform::permute(), Transform::sign_flip()}, 0.0, 5});
  const Matching m = one_to_one_score(correlation_matrix(s.pair), {.absolute = true});
  EXPECT_EQ(m.assignment, *s.truth.assignment);
  EXPECT_NEAR(m.zeta_1to1_abs, 1.0, 1e-9);
}

TEST(OneToOneScore, RectangularIsRejected) {
  try {
    one_to_one_score(kappa_of(Eigen::MatrixXd::Zero(3, 2)));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("truncate or pad"), std::string::npos);
  }
}

TEST(OneToOneScore, RandomBaselineIsSmall) {
  const AlignedPair p(random_embedding(10000, 50, 100), random_embedding(10000, 50, 101));
  EXPECT_LT(one_to_one_score(correlation_matrix(p)).zeta_1to1, 0.1);
}

}  // namespace
}  // namespace embsim
