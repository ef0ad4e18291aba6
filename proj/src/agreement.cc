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

#include "embsim/agreement.h"

#include "embsim/error.h"

namespace embsim {

AgreementResult krippendorff_alpha(std::span<const Label> first,
                                   std::span<const Label> second) {
  if (first.size() != second.size()) {
    throw InputError("agreement: answer sequences differ in length (" +
                     std::to_string(first.size()) + " vs " +
                     std::to_string(second.size()) + ")");
  }
  AgreementResult r;
  std::map<std::string, std::size_t> value_counts;
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!first[i] || !second[i]) {
      ++r.n_excluded;
      continue;
    }
    const std::string& x = *first[i];
    const std::string& y = *second[i];
    ++r.n_items;
    ++r.coincidence[{x, y}];
    ++r.coincidence[{y, x}];
    ++value_counts[x];
    ++value_counts[y];
    if (x == y) {
      ++r.n_agreements;
    } else {
      discordant += 2;
    }
  }
  if (r.n_items == 0) {
    throw InputError("agreement: no item was answered by both runs");
  }

  const double n = 2.0 * static_cast<double>(r.n_items);
  double same_pairs = 0.0;
  for (const auto& [value, count] : value_counts) {
    same_pairs += static_cast<double>(count) * static_cast<double>(count - 1);
  }
  const double expected = 1.0 - same_pairs / (n * (n - 1.0));
  if (expected <= 0.0) {
    r.alpha = 1.0;
    r.no_variation = true;
    return r;
  }
  const double observed = static_cast<double>(discordant) / n;
  r.alpha = 1.0 - observed / expected;
  return r;
}

std::vector<Label> answer_labels(std::span<const AnswerRecord> answers) {
  std::vector<Label> labels;
  labels.reserve(answers.size());
  for (const AnswerRecord& a : answers) labels.push_back(a.predicted);
  return labels;
}

AgreementReport agreement_report(const EmbeddingMatrix& first,
                                 const EmbeddingMatrix& second,
                                 std::span<const AnalogyQuestion> questions,
                                 unsigned threads) {
  AgreementReport report;
  report.first = evaluate(first, questions, threads);
  report.second = evaluate(second, questions, threads);
  const std::vector<Label> a = answer_labels(report.first.answers);
  const std::vector<Label> b = answer_labels(report.second.answers);
  report.agreement = krippendorff_alpha(a, b);
  for (std::size_t i = 0; i < questions.size(); ++i) {
    if (a[i] && b[i] && *a[i] != *b[i]) {
      const AnalogyQuestion& q = questions[i];
      report.disagreements.push_back({i, q.a, q.b, q.c, q.d, a[i], b[i]});
    }
  }
  return report;
}

}  // namespace embsim
