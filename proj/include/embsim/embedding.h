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

#ifndef EMBSIM_EMBEDDING_H_
#define EMBSIM_EMBEDDING_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace embsim {

using Index = Eigen::Index;

enum class EmbeddingFormat { kAuto, kWord2VecText, kGloveText };

// Parses "auto", "word2vec" / "word2vec_text", "glove" / "glove_text".
EmbeddingFormat parse_format_name(std::string_view name);

// A vocabulary-indexed dense matrix: row r is the vector of vocab()[r],
// column d is feature dimension d. Immutable once constructed.
//
// Invariants (checked by the constructor, InputError otherwise):
//   rows == vocab.size() >= 1, dims >= 1, words unique (byte-exact),
//   every value finite.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix(std::vector<std::string> vocab, Eigen::MatrixXd values,
                  std::string name = {});

  const std::vector<std::string>& vocab() const { return vocab_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const std::string& name() const { return name_; }

  Index rows() const { return values_.rows(); }
  Index dims() const { return values_.cols(); }

  // Row index of `word`, if present.
  std::optional<Index> find(const std::string& word) const;

  // Contiguous view of feature column d.
  std::span<const double> column(Index d) const {
    return {values_.col(d).data(), static_cast<std::size_t>(values_.rows())};
  }

  EmbeddingMatrix renamed(std::string name) &&;

 private:
  std::vector<std::string> vocab_;
  Eigen::MatrixXd values_;
  std::string name_;
  std::unordered_map<std::string, Index> index_;
};

// Reads an embedding in word2vec text ("<count> <dim>" header, then rows) or
// GloVe text (rows only). Values are read as doubles. In kAuto mode a first
// line of exactly two positive integers selects word2vec text.
// Throws ParseError (with a 1-based line number) or InputError.
EmbeddingMatrix parse_embedding(std::istream& in,
                                EmbeddingFormat format = EmbeddingFormat::kAuto,
                                std::string name = {});

// Opens `path` and parses it; the matrix is named after the file stem.
EmbeddingMatrix load_embedding(const std::filesystem::path& path,
                               EmbeddingFormat format = EmbeddingFormat::kAuto);

// Writes glove_text: "<word> <v1> ... <vD>\n" with `significant_digits`
// significant digits per value.
void write_glove_text(std::ostream& out, const EmbeddingMatrix& e,
                      int significant_digits = 6);

// Two embeddings restricted to a shared vocabulary, rows in identical order.
// Dimensions may differ between the sides.
class AlignedPair {
 public:
  // Requires left.vocab() == right.vocab(); InputError otherwise.
  AlignedPair(EmbeddingMatrix left, EmbeddingMatrix right,
              std::size_t dropped_left = 0, std::size_t dropped_right = 0);

  const EmbeddingMatrix& left() const { return left_; }
  const EmbeddingMatrix& right() const { return right_; }
  std::size_t shared_count() const { return left_.vocab().size(); }
  std::size_t dropped_left() const { return dropped_left_; }
  std::size_t dropped_right() const { return dropped_right_; }

  AlignedPair swapped() const;

 private:
  EmbeddingMatrix left_;
  EmbeddingMatrix right_;
  std::size_t dropped_left_;
  std::size_t dropped_right_;
};

// Restricts both embeddings to the intersection of their vocabularies, rows
// ordered as in `a`. When the vocabularies already coincide the matrices are
// moved, not copied. Throws InputError on an empty intersection.
AlignedPair align_vocabularies(EmbeddingMatrix a, EmbeddingMatrix b);

// An embedding whose non-zero rows have unit Euclidean norm.
struct RowNormalized {
  EmbeddingMatrix matrix;
  std::size_t zero_rows = 0;  // all-zero rows, left as zero
};

RowNormalized row_normalize(const EmbeddingMatrix& e);

}  // namespace embsim

#endif  // EMBSIM_EMBEDDING_H_
