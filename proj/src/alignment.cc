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

#include "embsim/alignment.h"

#include <algorithm>
#include <functional>
#include <string>

#include "embsim/error.h"

namespace embsim {

std::vector<double> Matching::sorted_descending() const {
  std::vector<double> out = matched_correlations;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Matching one_to_one_score(const CorrelationMatrix& kappa,
                          const MatchingOptions& options) {
  const Eigen::MatrixXd& k = kappa.values;
  if (k.rows() != k.cols()) {
    throw InputError(
        "one-to-one matching needs equal dimension counts, got " +
        std::to_string(k.rows()) + " and " + std::to_string(k.cols()) +
        "; truncate or pad one embedding explicitly");
  }

  const Assignment a = options.absolute
                           ? max_weight_assignment(k.cwiseAbs())
                           : max_weight_assignment(k);
  Matching m;
  m.absolute = options.absolute;
  m.assignment = a.assignment;
  const std::size_t n = a.assignment.size();
  m.matched_correlations.resize(n);
  m.matched_abs.resize(n);
  double sum = 0.0, sum_abs = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    const double value = k(a.assignment[d], static_cast<Index>(d));
    m.matched_correlations[d] = value;
    m.matched_abs[d] = std::abs(value);
    sum += value;
    sum_abs += std::abs(value);
  }
  m.zeta_1to1 = sum / static_cast<double>(n);
  m.zeta_1to1_abs = sum_abs / static_cast<double>(n);
  return m;
}

}  // namespace embsim
