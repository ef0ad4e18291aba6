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

#include "embsim/synth.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "embsim/error.h"

namespace embsim {
namespace {

std::string word_id(Index row) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "w%06lld", static_cast<long long>(row + 1));
  return buffer;
}

Eigen::MatrixXd random_orthogonal(Index n, SplitMix64& rng) {
  Eigen::MatrixXd g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) g(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  return q;
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (!(smallest > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

void resolve(Transform& t, Index dims, SplitMix64& rng) {
  const std::size_t n = static_cast<std::size_t>(dims);
  switch (t.kind) {
    case TransformKind::kIdentity:
      return;
    case TransformKind::kPermutation: {
      if (t.permutation.empty()) {
        t.permutation.resize(n);
        std::iota(t.permutation.begin(), t.permutation.end(), Index{0});
        for (std::size_t i = n - 1; i > 0; --i) {
          std::swap(t.permutation[i], t.permutation[rng.below(i + 1)]);
        }
      }
      std::vector<char> seen(n, 0);
      if (t.permutation.size() != n) throw InputError("synth: permutation has wrong length");
      for (Index p : t.permutation) {
        if (p < 0 || p >= dims || seen[static_cast<std::size_t>(p)]) {
          throw InputError("synth: permutation is not a permutation of 0..D-1");
        }
        seen[static_cast<std::size_t>(p)] = 1;
      }
      return;
    }
    case TransformKind::kSignFlip:
      if (t.signs.empty()) {
        t.signs.resize(n);
        for (auto& s : t.signs) s = (rng.next() >> 63) ? -1 : 1;
      }
      if (t.signs.size() != n) throw InputError("synth: sign mask has wrong length");
      for (int s : t.signs) {
        if (s != 1 && s != -1) throw InputError("synth: signs must be +1 or -1");
      }
      return;
    case TransformKind::kLinear:
      if (t.matrix.size() == 0) {
        const Eigen::MatrixXd q1 = random_orthogonal(dims, rng);
        const Eigen::MatrixXd q2 = random_orthogonal(dims, rng);
        Eigen::VectorXd s(dims);
        for (Index i = 0; i < dims; ++i) s(i) = 0.5 * std::pow(4.0, rng.uniform());
        t.matrix = q1 * s.asDiagonal() * q2;
      }
      if (t.matrix.rows() != dims || t.matrix.cols() != dims) {
        throw InputError("synth: linear map must be D x D");
      }
      if (!t.matrix.allFinite() || condition_number(t.matrix) >= kMaxConditionNumber) {
        throw InputError("synth: linear map is singular or ill-conditioned");
      }
      return;
  }
}

// Column d takes the old column perm[d], one cycle at a time with a single column
// of scratch space.
void permute_columns(Eigen::MatrixXd& m, const std::vector<Index>& perm) {
  std::vector<bool> done(perm.size(), false);
  Eigen::VectorXd scratch;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (done[start]) continue;
    scratch = m.col(static_cast<Index>(start));
    std::size_t d = start;
    while (true) {
      done[d] = true;
      const auto next = static_cast<std::size_t>(perm[d]);
      if (next == start) {
        m.col(static_cast<Index>(d)) = scratch;
        break;
      }
      m.col(static_cast<Index>(d)) = m.col(static_cast<Index>(next));
      d = next;
    }
  }
}

void apply(const Transform& t, Eigen::MatrixXd& current, Eigen::MatrixXd& mixing) {
  switch (t.kind) {
    case TransformKind::kIdentity:
      return;
    case TransformKind::kPermutation:
      permute_columns(current, t.permutation);
      permute_columns(mixing, t.permutation);
      return;
    case TransformKind::kSignFlip:
      for (std::size_t d = 0; d < t.signs.size(); ++d) {
        if (t.signs[d] < 0) {
          current.col(static_cast<Index>(d)) *= -1.0;
          mixing.col(static_cast<Index>(d)) *= -1.0;
        }
      }
      return;
    case TransformKind::kLinear:
      current = current * t.matrix;
      mixing = mixing * t.matrix;
      return;
  }
}

void describe_signed_permutation(GroundTruth& truth) {
  const Eigen::MatrixXd& m = truth.mixing;
  std::vector<Index> assignment(static_cast<std::size_t>(m.cols()));
  std::vector<int> signs(static_cast<std::size_t>(m.cols()));
  for (Index d = 0; d < m.cols(); ++d) {
    Index found = -1;
    for (Index r = 0; r < m.rows(); ++r) {
      const double v = m(r, d);
      if (v == 0.0) continue;
      if ((v != 1.0 && v != -1.0) || found >= 0) return;
      found = r;
      signs[static_cast<std::size_t>(d)] = v > 0.0 ? 1 : -1;
    }
    if (found < 0) return;
    assignment[static_cast<std::size_t>(d)] = found;
  }
  truth.assignment = std::move(assignment);
  truth.signs = std::move(signs);
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(angle);
  return r * std::cos(angle);
}

EmbeddingMatrix random_embedding(Index n_rows, Index n_dims, std::uint64_t seed,
                                 std::string name) {
  if (n_rows < 2 || n_dims < 1) {
    throw InputError("random embedding needs n_rows >= 2 and n_dims >= 1");
  }
  SplitMix64 rng(seed);
  Eigen::MatrixXd values(n_rows, n_dims);
  std::vector<std::string> vocab;
  vocab.reserve(static_cast<std::size_t>(n_rows));
  for (Index r = 0; r < n_rows; ++r) {
    vocab.push_back(word_id(r));
    for (Index d = 0; d < n_dims; ++d) values(r, d) = rng.normal();
  }
  return EmbeddingMatrix(std::move(vocab), std::move(values), std::move(name));
}

std::string transform_kind_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::kIdentity: return "identity";
    case TransformKind::kPermutation: return "permutation";
    case TransformKind::kSignFlip: return "sign_flip";
    case TransformKind::kLinear: return "linear";
  }
  return "identity";
}

TransformKind parse_transform_kind(const std::string& name) {
  if (name == "identity") return TransformKind::kIdentity;
  if (name == "permutation" || name == "perm") return TransformKind::kPermutation;
  if (name == "sign_flip" || name == "sign") return TransformKind::kSignFlip;
  if (name == "linear") return TransformKind::kLinear;
  throw InputError("unknown transform '" + name + "'");
}

SynthPair derive_pair(EmbeddingMatrix base, const SynthSpec& spec) {
  if (spec.n_rows != base.rows() || spec.n_dims != base.dims()) {
    throw InputError("synth: spec shape " + std::to_string(spec.n_rows) + "x" +
                     std::to_string(spec.n_dims) + " does not match the base " +
                     std::to_string(base.rows()) + "x" +
                     std::to_string(base.dims()));
  }
  if (spec.n_rows < 2 || spec.n_dims < 1) {
    throw InputError("synth: need n_rows >= 2 and n_dims >= 1");
  }
  if (!(spec.noise_sigma >= 0.0)) throw InputError("synth: sigma must be >= 0");

  SplitMix64 rng(spec.seed);
  GroundTruth truth;
  truth.noise_sigma = spec.noise_sigma;
  truth.seed = spec.seed;
  truth.transforms = spec.transforms;
  for (Transform& t : truth.transforms) resolve(t, spec.n_dims, rng);

  Eigen::MatrixXd right = base.values();
  truth.mixing = Eigen::MatrixXd::Identity(spec.n_dims, spec.n_dims);
  for (const Transform& t : truth.transforms) apply(t, right, truth.mixing);
  describe_signed_permutation(truth);

  if (spec.noise_sigma > 0.0) {
    for (Index r = 0; r < right.rows(); ++r) {
      for (Index d = 0; d < right.cols(); ++d) {
        right(r, d) += spec.noise_sigma * rng.normal();
      }
    }
  }

  EmbeddingMatrix right_embedding(base.vocab(), std::move(right),
                                  base.name() + "-derived");
  return {AlignedPair(std::move(base), std::move(right_embedding)), std::move(truth)};
}

}  // namespace embsim
