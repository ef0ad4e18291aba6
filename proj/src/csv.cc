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

#include "embsim/csv.h"

#include <charconv>
#include <istream>
#include <ostream>

#include "embsim/error.h"

namespace embsim {

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) out << ',';
    first = false;
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char ch : f) {
      if (ch == '"') out << '"';
      out << ch;
    }
    out << '"';
  }
  out << '\n';
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false, field_started = false;
  std::size_t line = 1;
  char ch;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    rows.push_back(std::move(row));
    row.clear();
    field_started = false;
  };
  while (in.get(ch)) {
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty()) throw ParseError(line, "stray quote inside a field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty() || !row.empty()) end_row();
        ++line;
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  if (in_quotes) throw ParseError(line, "unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_histogram_csv(std::ostream& out, const HistogramSummary& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << format_number(h.bin_edges[b]) << ',' << format_number(h.bin_edges[b + 1])
        << ',' << h.counts[b] << '\n';
  }
}

void write_kde_csv(std::ostream& out, const HistogramSummary& h) {
  out << "x,density\n";
  for (const auto& [x, density] : h.kde_points) {
    out << format_number(x) << ',' << format_number(density) << '\n';
  }
}

void write_series_csv(std::ostream& out, std::string_view value_name,
                      std::span<const double> values) {
  out << "rank," << value_name << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i + 1) << ',' << format_number(values[i]) << '\n';
  }
}

void write_answers_csv(std::ostream& out,
                       std::span<const AnalogyQuestion> questions,
                       std::span<const AnswerRecord> answers) {
  const std::vector<std::string> header = {"question_index", "a", "b", "c",
                                           "d", "predicted", "status"};
  write_csv_row(out, header);
  for (const AnswerRecord& r : answers) {
    const AnalogyQuestion& q = questions[r.question_index];
    const std::vector<std::string> fields = {
        std::to_string(r.question_index), q.a, q.b, q.c, q.d,
        r.predicted.value_or(""), std::string(status_name(r.status))};
    write_csv_row(out, fields);
  }
}

std::vector<AnswerRow> read_answers_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) throw ParseError(1, "answers file is empty");
  if (rows.front().size() != 7 || rows.front()[0] != "question_index") {
    throw ParseError(1, "expected header question_index,a,b,c,d,predicted,status");
  }
  std::vector<AnswerRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 7) {
      throw ParseError(i + 1, "expected 7 fields, found " + std::to_string(f.size()));
    }
    AnswerRow row;
    const char* first = f[0].data();
    const char* last = first + f[0].size();
    auto [ptr, ec] = std::from_chars(first, last, row.question_index);
    if (ec != std::errc() || ptr != last) {
      throw ParseError(i + 1, "bad question_index '" + f[0] + "'");
    }
    row.a = f[1];
    row.b = f[2];
    row.c = f[3];
    row.d = f[4];
    try {
      row.status = parse_status_name(f[6]);
    } catch (const InputError&) {
      throw ParseError(i + 1, "unknown status '" + f[6] + "'");
    }
    if (row.status != AnswerStatus::kSkipped) {
      if (f[5].empty()) throw ParseError(i + 1, "answered row without a prediction");
      row.predicted = f[5];
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace embsim
