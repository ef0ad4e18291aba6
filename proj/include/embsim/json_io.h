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

#ifndef EMBSIM_JSON_IO_H_
#define EMBSIM_JSON_IO_H_

#include "json.hpp"

#include "embsim/agreement.h"
#include "embsim/alignment.h"
#include "embsim/analogy.h"
#include "embsim/cca.h"
#include "embsim/column_stats.h"
#include "embsim/compare.h"
#include "embsim/synth.h"

namespace embsim {

// Key order is insertion order, so serialized reports are stable.
using Json = nlohmann::ordered_json;

Json serialize(const HistogramSummary& h);
Json serialize(const Matching& m);
// Directions are omitted; see write_directions().
Json serialize(const CcaResult& r);
Json serialize(const AccuracyCounts& c);
Json serialize(const AccuracyReport& r);
Json serialize(const AgreementResult& r);
// {alpha, n_items, n_excluded, disagreements: [...]} plus the two accuracy
// summaries and, when present, the (alpha, zeta) record.
Json serialize(const AgreementReport& r);
Json serialize(const GroundTruth& t);
Json serialize(const Comparison& c);

// Canonical directions as a glove_text-style matrix: one line per input
// dimension ("dim<i>"), k values each.
void write_directions(std::ostream& out, const Eigen::MatrixXd& directions);

}  // namespace embsim

#endif  // EMBSIM_JSON_IO_H_
