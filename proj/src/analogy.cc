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

#include "embsim/analogy.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include "embsim/error.h"
#include "embsim/parallel.h"

namespace embsim {
namespace {

// Questions scored together per pass over the embedding.
constexpr std::size_t kBatch = 32;
// Rows per cache block in the scoring pass.
constexpr Index kScoreRowBlock = 4096;

std::string ascii_lower(std::string s) {
  for (char& ch : s) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return s;
}

struct Query {
  Index a = -1, b = -1, c = -1;
  std::optional<Index> d;
  Eigen::VectorXd target;
};

std::optional<Query> make_query(const RowNormalized& e, const AnalogyQuestion& q) {
  const EmbeddingMatrix& m = e.matrix;
  auto a = m.find(q.a), b = m.find(q.b), c = m.find(q.c);
  if (!a || !b || !c) return std::nullopt;
  Query query;
  query.a = *a;
  query.b = *b;
  query.c = *c;
  query.d = m.find(q.d);
  query.target = m.values().row(*b).transpose() - m.values().row(*a).transpose() +
                 m.values().row(*c).transpose();
  return query;
}

// Scores every row against each query as a dot product accumulated in
// dimension order, so batch size never changes a score. Returns the best
// row per query (lowest index on ties), excluding the query words.
std::vector<Index> best_rows(const Eigen::MatrixXd& values,
                             const std::vector<const Query*>& queries) {
  const Index rows = values.rows();
  const Index dims = values.cols();
  const std::size_t nq = queries.size();
  std::vector<Index> best(nq, -1);
  std::vector<double> best_score(nq, -std::numeric_limits<double>::infinity());
  std::vector<double> scores;

  for (Index r0 = 0; r0 < rows; r0 += kScoreRowBlock) {
    const Index len = std::min(kScoreRowBlock, rows - r0);
    scores.assign(nq * static_cast<std::size_t>(len), 0.0);
    for (Index d = 0; d < dims; ++d) {
      const double* col = values.col(d).data() + r0;
      for (std::size_t q = 0; q < nq; ++q) {
        const double t = queries[q]->target(d);
        double* s = scores.data() + q * static_cast<std::size_t>(len);
        for (Index r = 0; r < len; ++r) s[r] += col[r] * t;
      }
    }
    for (std::size_t q = 0; q < nq; ++q) {
      const Query& query = *queries[q];
      const double* s = scores.data() + q * static_cast<std::size_t>(len);
      for (Index r = 0; r < len; ++r) {
        const Index row = r0 + r;
        if (row == query.a || row == query.b || row == query.c) continue;
        if (s[r] > best_score[q] || best[q] < 0) {
          best_score[q] = s[r];
          best[q] = row;
        }
      }
    }
  }
  return best;
}

AnswerRecord make_record(const RowNormalized& e, const std::optional<Query>& query,
                         Index best, std::size_t index) {
  AnswerRecord record;
  record.question_index = index;
  if (!query || best < 0) {
    record.status = AnswerStatus::kSkipped;
    return record;
  }
  record.predicted = e.matrix.vocab()[static_cast<std::size_t>(best)];
  if (!query->d) {
    record.status = AnswerStatus::kNotApplicable;
  } else {
    record.status = best == *query->d ? AnswerStatus::kCorrect : AnswerStatus::kWrong;
  }
  return record;
}

}  // namespace

std::string_view section_name(Section s) {
  return s == Section::kSemantic ? "semantic" : "syntactic";
}

Section section_for_category(std::string_view category) {
  return category.starts_with("gram") ? Section::kSyntactic : Section::kSemantic;
}

std::vector<AnalogyQuestion> parse_analogy_file(std::istream& in,
                                                const AnalogyParseOptions& options) {
  std::vector<AnalogyQuestion> questions;
  std::optional<std::string> category;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == ':') {
      const std::size_t begin = line.find_first_not_of(" \t", first + 1);
      const std::size_t end = line.find_last_not_of(" \t");
      if (begin == std::string::npos) {
        throw ParseError(line_number, "category header without a name");
      }
      category = line.substr(begin, end - begin + 1);
      continue;
    }
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(std::move(w));
    if (words.size() != 4) {
      throw ParseError(line_number, "expected 4 words, found " +
                                        std::to_string(words.size()));
    }
    if (!category) {
      throw ParseError(line_number, "question before any ': category' header");
    }
    if (options.lowercase) {
      for (auto& w : words) w = ascii_lower(std::move(w));
    }
    questions.push_back({words[0], words[1], words[2], words[3], *category,
                         section_for_category(*category)});
  }
  return questions;
}

std::string_view status_name(AnswerStatus s) {
  switch (s) {
    case AnswerStatus::kCorrect: return "correct";
    case AnswerStatus::kWrong: return "wrong";
    case AnswerStatus::kSkipped: return "skipped";
    case AnswerStatus::kNotApplicable: return "not_applicable";
  }
  return "skipped";
}

AnswerStatus parse_status_name(std::string_view name) {
  if (name == "correct") return AnswerStatus::kCorrect;
  if (name == "wrong") return AnswerStatus::kWrong;
  if (name == "skipped") return AnswerStatus::kSkipped;
  if (name == "not_applicable") return AnswerStatus::kNotApplicable;
  throw InputError("unknown answer status '" + std::string(name) + "'");
}

AnswerRecord answer_question(const RowNormalized& e, const AnalogyQuestion& q,
                             std::size_t question_index) {
  const std::optional<Query> query = make_query(e, q);
  Index best = -1;
  if (query) best = best_rows(e.matrix.values(), {&*query}).front();
  return make_record(e, query, best, question_index);
}

double AccuracyCounts::accuracy() const {
  return scored() == 0 ? 0.0
                       : static_cast<double>(correct) / static_cast<double>(scored());
}

double AccuracyCounts::accuracy_oov_wrong() const {
  return total == 0 ? 0.0
                    : static_cast<double>(correct) / static_cast<double>(total);
}

void AccuracyCounts::add(AnswerStatus status) {
  ++total;
  switch (status) {
    case AnswerStatus::kSkipped: ++skipped; break;
    case AnswerStatus::kNotApplicable: ++answered; ++not_applicable; break;
    case AnswerStatus::kCorrect: ++answered; ++correct; break;
    case AnswerStatus::kWrong: ++answered; break;
  }
}

AccuracyReport evaluate(const EmbeddingMatrix& e,
                        std::span<const AnalogyQuestion> questions,
                        unsigned threads) {
  const RowNormalized normalized = row_normalize(e);
  AccuracyReport report;
  report.embedding_name = e.name();
  report.zero_rows = normalized.zero_rows;
  report.answers.resize(questions.size());

  std::vector<std::optional<Query>> queries(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    queries[i] = make_query(normalized, questions[i]);
  }
  const std::size_t batches = (questions.size() + kBatch - 1) / kBatch;
  parallel_for(batches, threads, [&](std::size_t batch) {
    const std::size_t begin = batch * kBatch;
    const std::size_t end = std::min(begin + kBatch, questions.size());
    std::vector<const Query*> active;
    std::vector<std::size_t> slots;
    for (std::size_t i = begin; i < end; ++i) {
      if (queries[i]) {
        active.push_back(&*queries[i]);
        slots.push_back(i);
      } else {
        report.answers[i] = make_record(normalized, std::nullopt, -1, i);
      }
    }
    if (active.empty()) return;
    const std::vector<Index> best = best_rows(normalized.matrix.values(), active);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      report.answers[slots[k]] =
          make_record(normalized, queries[slots[k]], best[k], slots[k]);
    }
  });

  std::map<std::string, std::size_t> category_slot;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const AnalogyQuestion& q = questions[i];
    auto [it, inserted] = category_slot.emplace(q.category, report.categories.size());
    if (inserted) report.categories.push_back({q.category, q.section, {}});
    const AnswerStatus status = report.answers[i].status;
    report.categories[it->second].counts.add(status);
    (q.section == Section::kSemantic ? report.semantic : report.syntactic).add(status);
    report.total.add(status);
  }
  return report;
}

}  // namespace embsim
