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

#ifndef EMBSIM_COMPARE_H_
#define EMBSIM_COMPARE_H_

#include <optional>
#include <string>
#include <vector>

#include "embsim/alignment.h"
#include "embsim/cca.h"
#include "embsim/column_stats.h"
#include "embsim/embedding.h"

namespace embsim {

struct CompareOptions {
  bool abs_correlation = false;
  std::optional<double> regularization;  // unset: default relative ridge
  int bins = kDefaultHistogramBins;
  bool kde = false;
  unsigned threads = 0;
};

// Everything the end-to-end comparison computes for one aligned pair.
struct Comparison {
  std::string left_name, right_name;
  Index left_dims = 0, right_dims = 0;
  std::size_t shared_count = 0, dropped_left = 0, dropped_right = 0;

  // Population of all D1 x D2 kappa values.
  HistogramSummary kappa_histogram;
  double kappa_mean_abs = 0.0;
  std::vector<Index> degenerate_left, degenerate_right;

  Matching matching;
  HistogramSummary matched_histogram;

  CcaResult cca;
  HistogramSummary cca_histogram;
};

// Moments -> kappa -> one-to-one matching -> CCA. The moments are computed
// once and shared by kappa and CCA.
Comparison compare_pair(const AlignedPair& pair, const CompareOptions& options);

}  // namespace embsim

#endif  // EMBSIM_COMPARE_H_
