// Copyright 2026 The robust-tails Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "robust_tails/curve.hpp"
#include "robust_tails/gpd.hpp"
#include "robust_tails/radius.hpp"

namespace robust_tails {

struct RadiusRecord {
  RadiusEstimate estimate;
  double s = 0.0;      // wasserstein estimates
  double alpha = 0.0;  // knn estimates
};

struct ReturnLevelEntry {
  std::string label;
  double preasymptotic = 0.0;   // meaningful only when pre_resolved
  double asymptotic = 0.0;      // meaningful only when asym_resolved
  bool pre_extrapolated = false;
  bool asym_extrapolated = false;
  // a constant worst-case bound above the target has no finite return
  // level; the JSON then carries null plus a reason string
  bool pre_resolved = true;
  bool asym_resolved = true;
};

struct ReturnLevelRow {
  double period_years = 0.0;
  double reference = 0.0;
  bool reference_extrapolated = false;
  std::vector<ReturnLevelEntry> entries;
};

/// Machine-readable run output: fit summary, radius estimates, bound
/// curves and return-level tables. JSON serialization is lossless for
/// doubles (round-trips bit-exactly).
struct Report {
  bool has_fit = false;
  FitResult fit;
  std::size_t n = 0;
  std::size_t n_exceedances = 0;

  std::vector<RadiusRecord> radii;
  bool has_alpha = false;
  double alpha = 0.0;
  double alpha_epsilon = 0.0;

  std::vector<WorstCaseCurve> curves;
  std::vector<ReturnLevelRow> return_levels;
  double obs_per_year = 1.0;
};

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Writes "x,probability" rows (17 significant digits) for one curve column.
void write_curve_csv(const std::string& path, const WorstCaseCurve& curve,
                     CurveColumn column);

/// Filesystem-safe version of a curve label.
std::string slugify(const std::string& label);

}  // namespace robust_tails
