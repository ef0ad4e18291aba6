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

#ifndef EMBSIM_ANALOGY_H_
#define EMBSIM_ANALOGY_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embsim/embedding.h"

namespace embsim {

enum class Section { kSemantic, kSyntactic };

std::string_view section_name(Section s);

// Categories whose name starts with "gram" are syntactic.
Section section_for_category(std::string_view category);

// "a : b ~ c : d".
struct AnalogyQuestion {
  std::string a, b, c, d;
  std::string category;
  Section section = Section::kSemantic;
};

struct AnalogyParseOptions {
  bool lowercase = false;  // ASCII-lowercase the four words
};

// Reads ": category" headers followed by four-word lines. Blank lines are
// ignored. Throws ParseError for a line with other than four words or a
// question before the first header.
std::vector<AnalogyQuestion> parse_analogy_file(
    std::istream& in, const AnalogyParseOptions& options = {});

enum class AnswerStatus {
  kCorrect,
  kWrong,
  kSkipped,        // a, b or c out of vocabulary
  kNotApplicable,  // answered, but d is out of vocabulary
};

std::string_view status_name(AnswerStatus s);
AnswerStatus parse_status_name(std::string_view name);

struct AnswerRecord {
  std::size_t question_index = 0;
  std::optional<std::string> predicted;  // empty when skipped
  AnswerStatus status = AnswerStatus::kSkipped;
};

// 3CosAdd: argmax over the vocabulary minus {a, b, c} of
// cos(w, b - a + c). Ties go to the lowest row index.
AnswerRecord answer_question(const RowNormalized& e, const AnalogyQuestion& q,
                             std::size_t question_index = 0);

struct AccuracyCounts {
  std::size_t total = 0;
  std::size_t answered = 0;        // a, b, c in vocabulary
  std::size_t skipped = 0;
  std::size_t not_applicable = 0;  // answered with d out of vocabulary
  std::size_t correct = 0;

  std::size_t scored() const { return answered - not_applicable; }
  // correct / scored; out-of-vocabulary questions are left out.
  double accuracy() const;
  // correct / total; out-of-vocabulary questions count as wrong.
  double accuracy_oov_wrong() const;

  void add(AnswerStatus status);
};

struct CategoryAccuracy {
  std::string category;
  Section section = Section::kSemantic;
  AccuracyCounts counts;
};

struct AccuracyReport {
  std::string embedding_name;
  std::vector<CategoryAccuracy> categories;  // first-appearance order
  AccuracyCounts semantic, syntactic, total;
  std::vector<AnswerRecord> answers;  // question order
  std::size_t zero_rows = 0;
};

// Row-normalizes `e` and answers every question. Question order is kept in
// the output whatever the worker count.
AccuracyReport evaluate(const EmbeddingMatrix& e,
                        std::span<const AnalogyQuestion> questions,
                        unsigned threads = 0);

}  // namespace embsim

#endif  // EMBSIM_ANALOGY_H_
