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

#ifndef EMBSIM_CSV_H_
#define EMBSIM_CSV_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embsim/analogy.h"
#include "embsim/column_stats.h"

namespace embsim {

// Minimal RFC 4180: fields with a comma, quote or newline are quoted.
void write_csv_row(std::ostream& out, std::span<const std::string> fields);
std::vector<std::vector<std::string>> read_csv(std::istream& in);

// Shortest round-trip decimal form.
std::string format_number(double value);

// bin_lo,bin_hi,count
void write_histogram_csv(std::ostream& out, const HistogramSummary& h);
// x,density
void write_kde_csv(std::ostream& out, const HistogramSummary& h);
// rank,<value_name>; rank is 1-based.
void write_series_csv(std::ostream& out, std::string_view value_name,
                      std::span<const double> values);

// question_index,a,b,c,d,predicted,status
struct AnswerRow {
  std::size_t question_index = 0;
  std::string a, b, c, d;
  std::optional<std::string> predicted;
  AnswerStatus status = AnswerStatus::kSkipped;
};

void write_answers_csv(std::ostream& out,
                       std::span<const AnalogyQuestion> questions,
                       std::span<const AnswerRecord> answers);
// Throws ParseError on a malformed file.
std::vector<AnswerRow> read_answers_csv(std::istream& in);

}  // namespace embsim

#endif  // EMBSIM_CSV_H_
