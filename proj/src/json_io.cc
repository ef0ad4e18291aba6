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

#include "embsim/json_io.h"

#include <ostream>

#include "embsim/csv.h"

namespace embsim {
namespace {

constexpr double kOrderingTolerance = 1e-6;

Json indices(const std::vector<Index>& v) {
  Json out = Json::array();
  for (Index i : v) out.push_back(i);
  return out;
}

}  // namespace

Json serialize(const HistogramSummary& h) {
  Json j;
  j["bin_edges"] = h.bin_edges;
  j["counts"] = h.counts;
  j["median"] = h.median;
  if (!h.kde_points.empty()) {
    j["kde_bandwidth"] = h.bandwidth;
    Json points = Json::array();
    for (const auto& [x, density] : h.kde_points) points.push_back({x, density});
    j["kde_points"] = std::move(points);
  }
  return j;
}

Json serialize(const Matching& m) {
  Json j;
  j["assignment"] = indices(m.assignment);
  j["matched_correlations"] = m.matched_correlations;
  j["zeta_1to1"] = m.zeta_1to1;
  j["matched_sorted_descending"] = m.sorted_descending();
  j["objective"] = m.absolute ? "abs_correlation" : "correlation";
  if (m.absolute) {
    j["matched_abs"] = m.matched_abs;
    j["zeta_1to1_abs"] = m.zeta_1to1_abs;
  }
  return j;
}

Json serialize(const CcaResult& r) {
  Json j;
  j["correlations"] = r.correlations;
  j["zeta_cca"] = r.zeta_cca;
  j["k"] = r.k();
  j["regularization"] = r.regularization ? Json(*r.regularization) : Json("default");
  j["left_ridge"] = r.left_ridge;
  j["right_ridge"] = r.right_ridge;
  j["dropped_left"] = r.dropped_left;
  j["dropped_right"] = r.dropped_right;
  j["warnings"] = r.warnings;
  return j;
}

Json serialize(const AccuracyCounts& c) {
  Json j;
  j["total"] = c.total;
  j["answered"] = c.answered;
  j["skipped"] = c.skipped;
  j["not_applicable"] = c.not_applicable;
  j["correct"] = c.correct;
  j["accuracy"] = c.accuracy();
  j["accuracy_oov_wrong"] = c.accuracy_oov_wrong();
  return j;
}

Json serialize(const AccuracyReport& r) {
  Json j;
  j["embedding"] = r.embedding_name;
  j["semantic"] = serialize(r.semantic);
  j["syntactic"] = serialize(r.syntactic);
  j["total"] = serialize(r.total);
  Json categories = Json::array();
  for (const CategoryAccuracy& c : r.categories) {
    Json entry = serialize(c.counts);
    entry["category"] = c.category;
    entry["section"] = section_name(c.section);
    categories.push_back(std::move(entry));
  }
  j["categories"] = std::move(categories);
  j["zero_rows"] = r.zero_rows;
  return j;
}

Json serialize(const AgreementResult& r) {
  Json j;
  j["alpha"] = r.alpha;
  j["n_items"] = r.n_items;
  j["n_agreements"] = r.n_agreements;
  j["n_excluded"] = r.n_excluded;
  j["no_variation"] = r.no_variation;
  return j;
}

Json serialize(const AgreementReport& r) {
  Json j = serialize(r.agreement);
  Json rows = Json::array();
  for (const Disagreement& d : r.disagreements) {
    Json row;
    row["question_index"] = d.question_index;
    row["question"] = {d.a, d.b, d.c, d.d};
    row["first"] = d.first ? Json(*d.first) : Json(nullptr);
    row["second"] = d.second ? Json(*d.second) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  j["disagreements"] = std::move(rows);
  j["first"] = serialize(r.first);
  j["second"] = serialize(r.second);
  if (r.zeta_cca || r.zeta_1to1) {
    Json combined;
    combined["alpha"] = r.agreement.alpha;
    if (r.zeta_1to1) combined["zeta_1to1"] = *r.zeta_1to1;
    if (r.zeta_cca) combined["zeta_cca"] = *r.zeta_cca;
    j["combined"] = std::move(combined);
  }
  return j;
}

Json serialize(const GroundTruth& t) {
  Json j;
  j["seed"] = t.seed;
  j["noise_sigma"] = t.noise_sigma;
  Json transforms = Json::array();
  for (const Transform& tr : t.transforms) {
    Json entry;
    entry["kind"] = transform_kind_name(tr.kind);
    switch (tr.kind) {
      case TransformKind::kIdentity: break;
      case TransformKind::kPermutation: entry["permutation"] = indices(tr.permutation); break;
      case TransformKind::kSignFlip: entry["signs"] = tr.signs; break;
      case TransformKind::kLinear: {
        Json rows = Json::array();
        for (Index r = 0; r < tr.matrix.rows(); ++r) {
          std::vector<double> row(tr.matrix.row(r).begin(), tr.matrix.row(r).end());
          rows.push_back(row);
        }
        entry["matrix"] = std::move(rows);
        break;
      }
    }
    transforms.push_back(std::move(entry));
  }
  j["transforms"] = std::move(transforms);
  if (t.assignment) j["assignment"] = indices(*t.assignment);
  if (t.signs) j["signs"] = *t.signs;
  return j;
}

Json serialize(const Comparison& c) {
  Json j;
  Json inputs;
  inputs["left"] = {{"name", c.left_name}, {"dims", c.left_dims}, {"dropped", c.dropped_left}};
  inputs["right"] = {{"name", c.right_name}, {"dims", c.right_dims}, {"dropped", c.dropped_right}};
  inputs["shared_count"] = c.shared_count;
  j["inputs"] = std::move(inputs);

  Json kappa;
  kappa["histogram"] = serialize(c.kappa_histogram);
  kappa["median"] = c.kappa_histogram.median;
  kappa["mean_abs"] = c.kappa_mean_abs;
  kappa["degenerate_left"] = indices(c.degenerate_left);
  kappa["degenerate_right"] = indices(c.degenerate_right);
  j["kappa"] = std::move(kappa);

  Json matching = serialize(c.matching);
  matching["histogram"] = serialize(c.matched_histogram);
  j["matching"] = std::move(matching);

  Json cca = serialize(c.cca);
  cca["histogram"] = serialize(c.cca_histogram);
  j["cca"] = std::move(cca);

  Json summary;
  summary["zeta_1to1"] = c.matching.zeta_1to1;
  if (c.matching.absolute) summary["zeta_1to1_abs"] = c.matching.zeta_1to1_abs;
  summary["zeta_cca"] = c.cca.zeta_cca;
  summary["zeta_cca_ge_zeta_1to1"] =
      c.cca.zeta_cca >= c.matching.zeta_1to1 - kOrderingTolerance;
  j["summary"] = std::move(summary);
  return j;
}

void write_directions(std::ostream& out, const Eigen::MatrixXd& directions) {
  for (Index r = 0; r < directions.rows(); ++r) {
    out << "dim" << r;
    for (Index c = 0; c < directions.cols(); ++c) {
      out << ' ' << format_number(directions(r, c));
    }
    out << '\n';
  }
}

}  // namespace embsim
