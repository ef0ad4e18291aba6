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

#ifndef EMBSIM_ALIGNMENT_H_
#define EMBSIM_ALIGNMENT_H_

#include <vector>

#include <Eigen/Dense>

#include "embsim/column_stats.h"

namespace embsim {

struct Assignment {
  // assignment[d] is the row of `weights` matched to column d.
  std::vector<Index> assignment;
  // Sum over d of weights(assignment[d], d), accumulated in d order.
  double total_weight = 0.0;
};

// Exact maximum-weight perfect matching on a square matrix (Hungarian
// algorithm, O(D^3)). Among optimal assignments the lexicographically
// smallest one is returned. Throws InputError for empty, non-square or
// non-finite input.
Assignment max_weight_assignment(const Eigen::MatrixXd& weights);

struct MatchingOptions {
  // Match on |kappa| instead of kappa. Signed values are still reported.
  bool absolute = false;
};

// One-to-one dimension matching between two embeddings.
struct Matching {
  // assignment[d]: left dimension matched to right dimension d (0-based).
  std::vector<Index> assignment;
  // kappa(assignment[d], d), in right-dimension order.
  std::vector<double> matched_correlations;
  double zeta_1to1 = 0.0;  // mean of matched_correlations

  bool absolute = false;
  // |kappa(assignment[d], d)| and its mean; filled in either mode.
  std::vector<double> matched_abs;
  double zeta_1to1_abs = 0.0;

  // matched_correlations sorted descending.
  std::vector<double> sorted_descending() const;
};

// Requires a square kappa; rectangular input throws InputError asking the
// caller to truncate or pad explicitly.
Matching one_to_one_score(const CorrelationMatrix& kappa,
                          const MatchingOptions& options = {});

}  // namespace embsim

#endif  // EMBSIM_ALIGNMENT_H_
