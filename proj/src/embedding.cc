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

#include "embsim/embedding.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "embsim/error.h"

namespace embsim {
namespace {

// Splits on runs of spaces/tabs; a trailing '\r' is dropped first.
void tokenize(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
}

bool parse_positive_integer(std::string_view token, long long& value) {
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last && value > 0;
}

double parse_value(std::string_view token, std::size_t line_number) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_number,
                     "cannot parse value '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_number,
                     "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

EmbeddingFormat parse_format_name(std::string_view name) {
  if (name == "auto") return EmbeddingFormat::kAuto;
  if (name == "word2vec" || name == "word2vec_text") {
    return EmbeddingFormat::kWord2VecText;
  }
  if (name == "glove" || name == "glove_text") return EmbeddingFormat::kGloveText;
  throw InputError("unknown embedding format '" + std::string(name) + "'");
}

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> vocab,
                                 Eigen::MatrixXd values, std::string name)
    : vocab_(std::move(vocab)), values_(std::move(values)), name_(std::move(name)) {
  if (vocab_.empty()) throw InputError("embedding has an empty vocabulary");
  if (values_.cols() < 1) throw InputError("embedding has no dimensions");
  if (static_cast<std::size_t>(values_.rows()) != vocab_.size()) {
    throw InputError("embedding has " + std::to_string(values_.rows()) +
                     " rows but " + std::to_string(vocab_.size()) + " words");
  }
  if (!values_.allFinite()) throw InputError("embedding has non-finite values");
  index_.reserve(vocab_.size());
  for (std::size_t r = 0; r < vocab_.size(); ++r) {
    if (!index_.emplace(vocab_[r], static_cast<Index>(r)).second) {
      throw InputError("duplicate word '" + vocab_[r] + "'");
    }
  }
}

std::optional<Index> EmbeddingMatrix::find(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingMatrix EmbeddingMatrix::renamed(std::string name) && {
  EmbeddingMatrix out = std::move(*this);
  out.name_ = std::move(name);
  return out;
}

EmbeddingMatrix parse_embedding(std::istream& in, EmbeddingFormat format,
                                std::string name) {
  std::vector<std::string> vocab;
  std::vector<double> row_major;
  std::vector<std::string_view> tokens;
  std::unordered_map<std::string, std::size_t> first_seen;

  std::string line;
  std::size_t line_number = 0;
  long long dims = -1;
  long long declared_rows = -1;
  bool first_content_line = true;

  while (std::getline(in, line)) {
    ++line_number;
    tokenize(line, tokens);
    if (tokens.empty()) continue;

    if (first_content_line) {
      first_content_line = false;
      long long count = 0, dim = 0;
      const bool header_like = tokens.size() == 2 &&
                               parse_positive_integer(tokens[0], count) &&
                               parse_positive_integer(tokens[1], dim);
      if (format == EmbeddingFormat::kWord2VecText && !header_like) {
        throw ParseError(line_number, "expected '<count> <dim>' header");
      }
      if (format != EmbeddingFormat::kGloveText && header_like) {
        declared_rows = count;
        dims = dim;
        vocab.reserve(static_cast<std::size_t>(count));
        row_major.reserve(static_cast<std::size_t>(count * dim));
        continue;
      }
    }

    if (tokens.size() < 2) {
      throw ParseError(line_number, "expected a word followed by values");
    }
    const long long found = static_cast<long long>(tokens.size()) - 1;
    if (dims < 0) {
      dims = found;
    } else if (found != dims) {
      throw ParseError(line_number, "expected " + std::to_string(dims) +
                                        " values, found " + std::to_string(found));
    }
    std::string word(tokens[0]);
    if (auto [it, inserted] = first_seen.emplace(word, line_number); !inserted) {
      throw ParseError(line_number, "duplicate word '" + word +
                                        "' (first seen on line " +
                                        std::to_string(it->second) + ")");
    }
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      row_major.push_back(parse_value(tokens[t], line_number));
    }
    vocab.push_back(std::move(word));
  }
  if (in.bad()) throw InputError("read error while parsing embedding");
  if (vocab.empty()) throw InputError("embedding file is empty");
  if (declared_rows >= 0 && static_cast<long long>(vocab.size()) != declared_rows) {
    throw ParseError(1, "header declares " + std::to_string(declared_rows) +
                            " words but the file has " +
                            std::to_string(vocab.size()));
  }
  first_seen.clear();

  const Index rows = static_cast<Index>(vocab.size());
  Eigen::MatrixXd values =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>(row_major.data(), rows,
                                                       static_cast<Index>(dims));
  std::vector<double>().swap(row_major);
  return EmbeddingMatrix(std::move(vocab), std::move(values), std::move(name));
}

EmbeddingMatrix load_embedding(const std::filesystem::path& path,
                               EmbeddingFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embedding file '" + path.string() + "'");
  try {
    return parse_embedding(in, format, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string(), e);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_glove_text(std::ostream& out, const EmbeddingMatrix& e,
                      int significant_digits) {
  const Eigen::MatrixXd& v = e.values();
  char buffer[64];
  std::string line;
  for (Index r = 0; r < v.rows(); ++r) {
    line = e.vocab()[static_cast<std::size_t>(r)];
    for (Index d = 0; d < v.cols(); ++d) {
      auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v(r, d),
                                     std::chars_format::general,
                                     significant_digits);
      line.push_back(' ');
      line.append(buffer, ptr);
    }
    line.push_back('\n');
    out << line;
  }
}

AlignedPair::AlignedPair(EmbeddingMatrix left, EmbeddingMatrix right,
                         std::size_t dropped_left, std::size_t dropped_right)
    : left_(std::move(left)),
      right_(std::move(right)),
      dropped_left_(dropped_left),
      dropped_right_(dropped_right) {
  if (left_.vocab() != right_.vocab()) {
    throw InputError("aligned pair requires identical vocabularies");
  }
}

AlignedPair AlignedPair::swapped() const {
  return AlignedPair(right_, left_, dropped_right_, dropped_left_);
}

AlignedPair align_vocabularies(EmbeddingMatrix a, EmbeddingMatrix b) {
  if (a.vocab() == b.vocab()) return AlignedPair(std::move(a), std::move(b));

  std::vector<Index> rows_a, rows_b;
  std::vector<std::string> shared;
  for (std::size_t r = 0; r < a.vocab().size(); ++r) {
    if (auto rb = b.find(a.vocab()[r])) {
      rows_a.push_back(static_cast<Index>(r));
      rows_b.push_back(*rb);
      shared.push_back(a.vocab()[r]);
    }
  }
  if (shared.empty()) {
    throw InputError("embeddings '" + a.name() + "' and '" + b.name() +
                     "' share no vocabulary");
  }
  const std::size_t dropped_a = a.vocab().size() - shared.size();
  const std::size_t dropped_b = b.vocab().size() - shared.size();
  Eigen::MatrixXd va = a.values()(rows_a, Eigen::all);
  Eigen::MatrixXd vb = b.values()(rows_b, Eigen::all);
  std::string name_a = a.name(), name_b = b.name();
  {
    // Release the full matrices before the shared-vocabulary copies are kept.
    EmbeddingMatrix release_a = std::move(a);
    EmbeddingMatrix release_b = std::move(b);
  }
  EmbeddingMatrix left(shared, std::move(va), std::move(name_a));
  EmbeddingMatrix right(std::move(shared), std::move(vb), std::move(name_b));
  return AlignedPair(std::move(left), std::move(right), dropped_a, dropped_b);
}

RowNormalized row_normalize(const EmbeddingMatrix& e) {
  Eigen::MatrixXd values = e.values();
  std::size_t zero_rows = 0;
  for (Index r = 0; r < values.rows(); ++r) {
    const double norm = values.row(r).norm();
    if (norm == 0.0) {
      ++zero_rows;
    } else {
      values.row(r) /= norm;
    }
  }
  return {EmbeddingMatrix(e.vocab(), std::move(values), e.name()), zero_rows};
}

}  // namespace embsim
