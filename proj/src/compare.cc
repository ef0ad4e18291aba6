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

#include "embsim/compare.h"

#include <cmath>

#include "embsim/error.h"

namespace embsim {

Comparison compare_pair(const AlignedPair& pair, const CompareOptions& options) {
  if (pair.shared_count() < 2) {
    throw InputError("compare: need at least 2 shared words");
  }
  Comparison c;
  c.left_name = pair.left().name();
  c.right_name = pair.right().name();
  c.left_dims = pair.left().dims();
  c.right_dims = pair.right().dims();
  c.shared_count = pair.shared_count();
  c.dropped_left = pair.dropped_left();
  c.dropped_right = pair.dropped_right();

  const CrossMoments moments =
      compute_moments(pair, {.within_side = true, .threads = options.threads});

  const CorrelationMatrix kappa = correlation_matrix(moments);
  c.degenerate_left = kappa.degenerate_left;
  c.degenerate_right = kappa.degenerate_right;
  const std::vector<double> flat = kappa.flattened();
  c.kappa_histogram = histogram(flat, options.bins, options.kde);
  double abs_sum = 0.0;
  for (double v : flat) abs_sum += std::abs(v);
  c.kappa_mean_abs = abs_sum / static_cast<double>(flat.size());

  c.matching = one_to_one_score(kappa, {.absolute = options.abs_correlation});
  c.matched_histogram =
      histogram(c.matching.matched_correlations, options.bins, options.kde);

  c.cca = cca_fit(moments, {.regularization = options.regularization,
                            .threads = options.threads});
  c.cca_histogram = histogram(c.cca.correlations, options.bins, options.kde);
  return c;
}

}  // namespace embsim
