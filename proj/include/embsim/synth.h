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

#ifndef EMBSIM_SYNTH_H_
#define EMBSIM_SYNTH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "embsim/embedding.h"

namespace embsim {

// SplitMix64 (Steele, Lea and Flood), version 1 of the embsim stream:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// uniform() is (next() >> 11) * 2^-53. normal() is Box-Muller on
// u1 = 1 - uniform(), u2 = uniform(): it returns r cos(2 pi u2) and caches
// r sin(2 pi u2) for the following call.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform();
  double normal();
  // Uniform integer in [0, bound) by modulo reduction.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
  std::optional<double> spare_normal_;
};

// i.i.d. standard normal entries drawn row by row; words are w000001,
// w000002, ... Identical seeds give bit-identical matrices.
EmbeddingMatrix random_embedding(Index n_rows, Index n_dims, std::uint64_t seed,
                                 std::string name = "random");

enum class TransformKind { kIdentity, kPermutation, kSignFlip, kLinear };

std::string transform_kind_name(TransformKind kind);
TransformKind parse_transform_kind(const std::string& name);

// One step of a synthetic transform. Parameters left empty are drawn from
// the pair's generator when the pair is derived.
struct Transform {
  TransformKind kind = TransformKind::kIdentity;
  // Output column d is input column permutation[d].
  std::vector<Index> permutation;
  // Output column d is multiplied by signs[d] (+1 or -1).
  std::vector<int> signs;
  // Output = input * matrix; condition number must stay below 1e12.
  Eigen::MatrixXd matrix;

  static Transform identity() { return {}; }
  static Transform permute(std::vector<Index> p = {}) {
    return {TransformKind::kPermutation, std::move(p), {}, {}};
  }
  static Transform sign_flip(std::vector<int> s = {}) {
    return {TransformKind::kSignFlip, {}, std::move(s), {}};
  }
  static Transform linear(Eigen::MatrixXd m = {}) {
    return {TransformKind::kLinear, {}, {}, std::move(m)};
  }
};

inline constexpr double kMaxConditionNumber = 1e12;

struct SynthSpec {
  Index n_rows = 0;
  Index n_dims = 0;
  std::vector<Transform> transforms;  // applied in order
  double noise_sigma = 0.0;           // i.i.d. Gaussian, added last
  std::uint64_t seed = 0;
};

// Exactly what was applied: right = left * mixing + noise_sigma * N.
struct GroundTruth {
  std::vector<Transform> transforms;  // parameters resolved
  Eigen::MatrixXd mixing;
  // Set when mixing is a signed permutation: right column d equals
  // signs[d] * left column assignment[d] before noise.
  std::optional<std::vector<Index>> assignment;
  std::optional<std::vector<int>> signs;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

struct SynthPair {
  AlignedPair pair;
  GroundTruth truth;
};

// Draw order from SplitMix64(spec.seed): parameters of each transform in
// order (permutation: Fisher-Yates from the last slot down; signs: one draw
// per dimension, top bit set means -1; linear: Q1 diag(s) Q2 with Q from the
// QR of a row-major Gaussian matrix and s = 0.5 * 4^u), then the noise
// matrix row by row. Throws InputError when the spec does not match `base`,
// sigma is negative, or a supplied parameter is invalid (including a
// singular or ill-conditioned matrix).
SynthPair derive_pair(EmbeddingMatrix base, const SynthSpec& spec);

}  // namespace embsim

#endif  // EMBSIM_SYNTH_H_
