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

#include "kernels.h"

#include <algorithm>

#include "embsim/parallel.h"

namespace embsim::kernels {
namespace {

inline constexpr Eigen::Index kColTile = 16;

}  // namespace

void LaneSum::add_centered_products(const double* x, double mx, const double* y,
                                    double my, std::size_t n) {
  double s[kLanes], c[kLanes];
  for (std::size_t k = 0; k < kLanes; ++k) {
    s[k] = sum[k];
    c[k] = comp[k];
  }
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      const double term = (x[i + k] - mx) * (y[i + k] - my);
      const double yk = term - c[k];
      const double t = s[k] + yk;
      c[k] = (t - s[k]) - yk;
      s[k] = t;
    }
  }
  for (std::size_t k = 0; i < n; ++i, ++k) {
    const double term = (x[i] - mx) * (y[i] - my);
    const double yk = term - c[k];
    const double t = s[k] + yk;
    c[k] = (t - s[k]) - yk;
    s[k] = t;
  }
  for (std::size_t k = 0; k < kLanes; ++k) {
    sum[k] = s[k];
    comp[k] = c[k];
  }
}

void LaneSum::add_values(const double* x, std::size_t n) {
  double s[kLanes], c[kLanes];
  for (std::size_t k = 0; k < kLanes; ++k) {
    s[k] = sum[k];
    c[k] = comp[k];
  }
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    for (std::size_t k = 0; k < kLanes; ++k) {
      const double yk = x[i + k] - c[k];
      const double t = s[k] + yk;
      c[k] = (t - s[k]) - yk;
      s[k] = t;
    }
  }
  for (std::size_t k = 0; i < n; ++i, ++k) {
    const double yk = x[i] - c[k];
    const double t = s[k] + yk;
    c[k] = (t - s[k]) - yk;
    s[k] = t;
  }
  for (std::size_t k = 0; k < kLanes; ++k) {
    sum[k] = s[k];
    comp[k] = c[k];
  }
}

double LaneSum::total() const {
  double s = 0.0, c = 0.0;
  for (std::size_t k = 0; k < kLanes; ++k) {
    const double yk = (sum[k] - comp[k]) - c;
    const double t = s + yk;
    c = (t - s) - yk;
    s = t;
  }
  return s;
}

double compensated_mean(std::span<const double> x) {
  LaneSum acc;
  for (std::size_t r0 = 0; r0 < x.size(); r0 += kRowBlock) {
    acc.add_values(x.data() + r0, std::min(kRowBlock, x.size() - r0));
  }
  return acc.total() / static_cast<double>(x.size());
}

double centered_cross_sum(std::span<const double> x, double mx,
                          std::span<const double> y, double my) {
  LaneSum acc;
  for (std::size_t r0 = 0; r0 < x.size(); r0 += kRowBlock) {
    acc.add_centered_products(x.data() + r0, mx, y.data() + r0, my,
                              std::min(kRowBlock, x.size() - r0));
  }
  return acc.total();
}

bool is_constant(std::span<const double> x) {
  if (x.empty()) return true;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *lo == *hi;
}

namespace {

struct Tile {
  Eigen::Index i0, i1, j0, j1;
};

void run_tiles(const Eigen::MatrixXd& left, const Eigen::VectorXd& left_mean,
               const Eigen::MatrixXd& right, const Eigen::VectorXd& right_mean,
               const std::vector<Tile>& tiles, bool upper_only,
               unsigned threads, Eigen::MatrixXd& out) {
  const std::size_t n = static_cast<std::size_t>(left.rows());
  parallel_for(tiles.size(), threads, [&](std::size_t t) {
    const Tile& tile = tiles[t];
    const Eigen::Index width = tile.j1 - tile.j0;
    std::vector<LaneSum> acc(
        static_cast<std::size_t>((tile.i1 - tile.i0) * width));
    for (std::size_t r0 = 0; r0 < n; r0 += kRowBlock) {
      const std::size_t len = std::min(kRowBlock, n - r0);
      for (Eigen::Index i = tile.i0; i < tile.i1; ++i) {
        const double* x = left.col(i).data() + r0;
        const double mx = left_mean(i);
        const Eigen::Index j_begin = upper_only ? std::max(i, tile.j0) : tile.j0;
        for (Eigen::Index j = j_begin; j < tile.j1; ++j) {
          acc[static_cast<std::size_t>((i - tile.i0) * width + (j - tile.j0))]
              .add_centered_products(x, mx, right.col(j).data() + r0,
                                     right_mean(j), len);
        }
      }
    }
    for (Eigen::Index i = tile.i0; i < tile.i1; ++i) {
      const Eigen::Index j_begin = upper_only ? std::max(i, tile.j0) : tile.j0;
      for (Eigen::Index j = j_begin; j < tile.j1; ++j) {
        out(i, j) =
            acc[static_cast<std::size_t>((i - tile.i0) * width + (j - tile.j0))]
                .total();
      }
    }
  });
}

}  // namespace

void centered_cross_matrix(const Eigen::MatrixXd& left,
                           const Eigen::VectorXd& left_mean,
                           const Eigen::MatrixXd& right,
                           const Eigen::VectorXd& right_mean, unsigned threads,
                           Eigen::MatrixXd& out) {
  out.resize(left.cols(), right.cols());
  std::vector<Tile> tiles;
  for (Eigen::Index i0 = 0; i0 < left.cols(); i0 += kColTile) {
    for (Eigen::Index j0 = 0; j0 < right.cols(); j0 += kColTile) {
      tiles.push_back({i0, std::min(i0 + kColTile, left.cols()), j0,
                       std::min(j0 + kColTile, right.cols())});
    }
  }
  run_tiles(left, left_mean, right, right_mean, tiles, false, threads, out);
}

void centered_gram_matrix(const Eigen::MatrixXd& x, const Eigen::VectorXd& mean,
                          unsigned threads, Eigen::MatrixXd& out) {
  out.resize(x.cols(), x.cols());
  std::vector<Tile> tiles;
  for (Eigen::Index i0 = 0; i0 < x.cols(); i0 += kColTile) {
    for (Eigen::Index j0 = i0; j0 < x.cols(); j0 += kColTile) {
      tiles.push_back({i0, std::min(i0 + kColTile, x.cols()), j0,
                       std::min(j0 + kColTile, x.cols())});
    }
  }
  run_tiles(x, mean, x, mean, tiles, true, threads, out);
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) out(i, j) = out(j, i);
  }
}

}  // namespace embsim::kernels
