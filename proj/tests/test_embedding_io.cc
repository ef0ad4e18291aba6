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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "embsim/embedding.h"
#include "embsim/error.h"
#include "embsim/synth.h"

namespace embsim {
namespace {

EmbeddingMatrix parse(const std::string& text,
                      EmbeddingFormat format = EmbeddingFormat::kAuto) {
  std::istringstream in(text);
  return parse_embedding(in, format);
}

TEST(ParseEmbedding, GloveIdentity) {
  const EmbeddingMatrix e = parse("a 1.0 0.0\nb 0.0 1.0");
  EXPECT_EQ(e.vocab(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(e.values(), Eigen::MatrixXd::Identity(2, 2));
}

TEST(ParseEmbedding, Word2VecHeader) {
  const EmbeddingMatrix e = parse("2 3\nx 1 2 3\ny 4 5 6\n");
  ASSERT_EQ(e.rows(), 2);
  ASSERT_EQ(e.dims(), 3);
  EXPECT_EQ(e.vocab(), (std::vector<std::string>{"x", "y"}));
  Eigen::MatrixXd expected(2, 3);
  expected << 1, 2, 3, 4, 5, 6;
  EXPECT_EQ(e.values(), expected);
}

TEST(ParseEmbedding, ExplicitFormats) {
  EXPECT_EQ(parse("2 3\nx 1 2 3\ny 4 5 6\n", EmbeddingFormat::kWord2VecText).rows(), 2);
  // A glove file whose first row happens to look like a header.
  EXPECT_THROW(parse("2 3\nx 1 2 3\n", EmbeddingFormat::kGloveText), ParseError);
  EXPECT_THROW(parse("a 1 2\nb 3 4\n", EmbeddingFormat::kWord2VecText), ParseError);
}

TEST(ParseEmbedding, RaggedRowNamesLine) {
  try {
    parse("a 1 2 3\nb 1 2 3 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseEmbedding, DuplicateWordNamed) {
  try {
    parse("a 1 2\nb 3 4\na 5 6\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos) << e.what();
  }
}

TEST(ParseEmbedding, Rejections) {
  EXPECT_THROW(parse(""), InputError);
  EXPECT_THROW(parse("\n\n"), InputError);
  EXPECT_THROW(parse("a 1 nan\n"), ParseError);
  EXPECT_THROW(parse("a 1 inf\n"), ParseError);
  EXPECT_THROW(parse("a 1 x\n"), ParseError);
  EXPECT_THROW(parse("a\n"), ParseError);
  EXPECT_THROW(parse("3 2\na 1 2\nb 3 4\n"), ParseError);  // header count
  EXPECT_THROW(parse("2 3\na 1 2\nb 3 4\n"), ParseError);  // header dim
}

TEST(ParseEmbedding, ToleratesCrlfTabsAndBlankLines) {
  const EmbeddingMatrix e = parse("a\t1 2\r\n\r\nb 3  4\r\n");
  EXPECT_EQ(e.rows(), 2);
  EXPECT_EQ(e.values()(1, 1), 4.0);
}

TEST(ParseEmbedding, PreservesOrderAndBytes) {
  const EmbeddingMatrix e = parse("Zeta 1\nalpha 2\nÄpfel 3\nzeta 4\n");
  EXPECT_EQ(e.vocab(), (std::vector<std::string>{"Zeta", "alpha", "Äpfel", "zeta"}));
  EXPECT_EQ(*e.find("zeta"), 3);
  EXPECT_FALSE(e.find("ZETA").has_value());
}

TEST(EmbeddingMatrix, ValidatesInvariants) {
  EXPECT_THROW(EmbeddingMatrix({"a"}, Eigen::MatrixXd::Zero(2, 1)), InputError);
  EXPECT_THROW(EmbeddingMatrix({"a", "a"}, Eigen::MatrixXd::Zero(2, 1)), InputError);
  EXPECT_THROW(EmbeddingMatrix({"a"}, Eigen::MatrixXd::Zero(1, 0)), InputError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(1, 1);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(EmbeddingMatrix({"a"}, bad), InputError);
}

TEST(WriteGlove, RoundTripWithinPrecision) {
  const EmbeddingMatrix e = random_embedding(50, 7, 11);
  std::ostringstream out;
  write_glove_text(out, e);
  const EmbeddingMatrix back = parse(out.str());
  EXPECT_EQ(back.vocab(), e.vocab());
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.dims(); ++j) {
      const double v = e.values()(i, j);
      EXPECT_NEAR(back.values()(i, j), v, 5e-6 * std::abs(v) + 1e-300);
    }
  }
  std::ostringstream exact;
  write_glove_text(exact, e, 17);
  EXPECT_EQ(parse(exact.str()).values(), e.values());
}

TEST(LoadEmbedding, ErrorsNameThePath) {
  try {
    load_embedding("/nonexistent/vectors.txt");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/vectors.txt"), std::string::npos);
  }
  const auto path = std::filesystem::temp_directory_path() / "embsim_bad_rows.txt";
  {
    std::ofstream f(path);
    f << "a 1 2\nb 1\n";
  }
  try {
    load_embedding(path);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find(path.string() + ":2"), std::string::npos)
        << e.what();
  }
  std::filesystem::remove(path);
}

TEST(LoadEmbedding, NameIsFileStem) {
  const auto path = std::filesystem::temp_directory_path() / "glove_run1.txt";
  {
    std::ofstream f(path);
    f << "a 1 2\nb 3 4\n";
  }
  EXPECT_EQ(load_embedding(path).name(), "glove_run1");
  std::filesystem::remove(path);
}

TEST(AlignVocabularies, IntersectionInLeftOrder) {
  const EmbeddingMatrix a = parse("x 1\ny 2\nz 3\n");
  const EmbeddingMatrix b = parse("z 30\nx 10\n");
  const AlignedPair p = align_vocabularies(a, b);
  EXPECT_EQ(p.left().vocab(), (std::vector<std::string>{"x", "z"}));
  EXPECT_EQ(p.right().vocab(), p.left().vocab());
  EXPECT_EQ(p.shared_count(), 2u);
  EXPECT_EQ(p.dropped_left(), 1u);
  EXPECT_EQ(p.dropped_right(), 0u);
  EXPECT_EQ(p.left().values()(1, 0), 3.0);
  EXPECT_EQ(p.right().values()(1, 0), 30.0);
}

TEST(AlignVocabularies, IdenticalAndDisjoint) {
  const EmbeddingMatrix a = random_embedding(20, 3, 1);
  const AlignedPair p = align_vocabularies(a, a);
  EXPECT_EQ(p.shared_count(), 20u);
  EXPECT_EQ(p.dropped_left() + p.dropped_right(), 0u);
  EXPECT_THROW(align_vocabularies(parse("a 1\n"), parse("b 1\n")), InputError);
}

TEST(AlignVocabularies, Idempotent) {
  const EmbeddingMatrix a = parse("p 1 0\nq 2 1\nr 3 5\ns 0 0\n");
  const EmbeddingMatrix b = parse("s 9\nr 8\nq 7\nt 6\n");
  const AlignedPair once = align_vocabularies(a, b);
  const AlignedPair twice = align_vocabularies(once.left(), once.right());
  EXPECT_EQ(twice.left().vocab(), once.left().vocab());
  EXPECT_EQ(twice.left().values(), once.left().values());
  EXPECT_EQ(twice.right().values(), once.right().values());
  for (std::size_t i = 0; i < once.shared_count(); ++i) {
    const std::string& w = once.left().vocab()[i];
    EXPECT_EQ(once.left().values().row(i), a.values().row(*a.find(w)));
    EXPECT_EQ(once.right().values().row(i), b.values().row(*b.find(w)));
  }
}

TEST(AlignedPair, RequiresIdenticalVocab) {
  EXPECT_THROW(AlignedPair(parse("a 1\nb 2\n"), parse("b 1\na 2\n")), InputError);
}

TEST(RowNormalize, Examples) {
  const RowNormalized r = row_normalize(parse("a 3 4\nb 0 0\nc 1 0\n"));
  EXPECT_DOUBLE_EQ(r.matrix.values()(0, 0), 0.6);
  EXPECT_DOUBLE_EQ(r.matrix.values()(0, 1), 0.8);
  EXPECT_EQ(r.matrix.values()(1, 0), 0.0);
  EXPECT_EQ(r.matrix.values()(1, 1), 0.0);
  EXPECT_EQ(r.matrix.values()(2, 0), 1.0);
  EXPECT_EQ(r.zero_rows, 1u);
}

TEST(RowNormalize, UnitNorms) {
  const RowNormalized r = row_normalize(random_embedding(100, 9, 5));
  for (Index i = 0; i < 100; ++i) EXPECT_NEAR(r.matrix.values().row(i).norm(), 1.0, 1e-14);
  EXPECT_EQ(r.zero_rows, 0u);
}

}  // namespace
}  // namespace embsim
