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

#ifndef EMBSIM_AGREEMENT_H_
#define EMBSIM_AGREEMENT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "embsim/analogy.h"

namespace embsim {

// A label per item; std::nullopt marks a missing (skipped) rating.
using Label = std::optional<std::string>;

// Krippendorff's alpha for two raters and nominal labels.
struct AgreementResult {
  double alpha = 1.0;
  std::size_t n_items = 0;       // items rated by both raters
  std::size_t n_agreements = 0;
  std::size_t n_excluded = 0;    // items missing from either rater
  // D_e == 0: every pairable value is identical, alpha = 1 by convention.
  bool no_variation = false;
  // Coincidence counts o(u, v); each item contributes (a, b) and (b, a).
  std::map<std::pair<std::string, std::string>, std::size_t> coincidence;
};

// Items with a missing label on either side are excluded. With n = 2N
// pairable values and n_v the count of value v:
//   D_o = (discordant coincidences) / n
//   D_e = 1 - sum_v n_v (n_v - 1) / (n (n - 1))
//   alpha = 1 - D_o / D_e
// Throws InputError on a length mismatch or when no item is usable.
AgreementResult krippendorff_alpha(std::span<const Label> first,
                                   std::span<const Label> second);

// Labels (predicted words) taken from answer records.
std::vector<Label> answer_labels(std::span<const AnswerRecord> answers);

struct Disagreement {
  std::size_t question_index = 0;
  std::string a, b, c, d;
  Label first, second;
};

struct AgreementReport {
  AccuracyReport first, second;
  AgreementResult agreement;
  // Questions answered by both runs with different predictions.
  std::vector<Disagreement> disagreements;
  // Optional dimension-similarity scores for the combined (alpha, zeta) row.
  std::optional<double> zeta_1to1, zeta_cca;
};

AgreementReport agreement_report(const EmbeddingMatrix& first,
                                 const EmbeddingMatrix& second,
                                 std::span<const AnalogyQuestion> questions,
                                 unsigned threads = 0);

}  // namespace embsim

#endif  // EMBSIM_AGREEMENT_H_
