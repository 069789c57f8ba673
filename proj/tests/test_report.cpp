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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "robust_tails/curve.hpp"
#include "robust_tails/report.hpp"

using namespace robust_tails;

namespace {

Report make_report() {
  Report r;
  r.has_fit = true;
  r.fit.model = TailModel{9.97, 0.05, 2.03, 7.034};
  r.fit.xi_hat = 1.0 / 2.03;
  r.fit.se_xi = 0.135;
  r.fit.xi_ci = {1.0 / 2.03 - 0.2648, 1.0 / 2.03 + 0.2648};
  r.fit.loglik = -401.75;
  r.n = 2167;
  r.n_exceedances = 109;

  r.radii.push_back({{3.2, "wasserstein-empirical", 0, 0}, 1.5, 0.0});
  r.radii.push_back({{0.01, "knn-hellinger", 11, 1090}, 0.0, 2.86});
  r.has_alpha = true;
  r.alpha = 2.86;
  r.alpha_epsilon = 0.2648;

  WorstCaseCurve c;
  c.ambiguity = AmbiguitySet::wasserstein(1.5, 3.2);
  for (double x : {10.3, 17.0, 93.7}) {
    CurvePoint p;
    p.x = x;
    p.reference = 1.0 / (3.0 * x);   // awkward non-representable doubles
    p.preasymptotic = 2.0 / (3.0 * x);
    p.asymptotic = 0.1 + 1e-17 * x;
    p.saturated = x < 11.0;
    p.method = "asymptotic";
    c.points.push_back(p);
  }
  r.curves.push_back(c);

  ReturnLevelRow row;
  row.period_years = 50.0;
  row.reference = 101.0 / 3.0;
  ReturnLevelEntry e1;
  e1.label = "wasserstein:s=1.5";
  e1.preasymptotic = 210.123456789;
  e1.asymptotic = 200.0 / 7.0;
  e1.asym_extrapolated = true;
  row.entries.push_back(e1);
  ReturnLevelEntry e2;  // constant bound: no finite level, serialized as null
  e2.label = "triangle";
  e2.pre_resolved = false;
  e2.asym_resolved = false;
  e2.pre_extrapolated = true;
  e2.asym_extrapolated = true;
  row.entries.push_back(e2);
  r.return_levels.push_back(row);
  r.obs_per_year = 197.0;
  return r;
}

}  // namespace

TEST_CASE("report json round-trip is bit-exact") {
  const Report r = make_report();
  const std::string text = report_to_json(r).dump(2);
  const Report back = report_from_json(nlohmann::json::parse(text));

  CHECK(back.fit.model.beta == r.fit.model.beta);
  CHECK(back.fit.xi_ci.first == r.fit.xi_ci.first);
  CHECK(back.radii.size() == 2);
  CHECK(back.radii[0].estimate.delta == r.radii[0].estimate.delta);
  CHECK(back.alpha == r.alpha);
  REQUIRE(back.curves.size() == 1);
  REQUIRE(back.curves[0].points.size() == r.curves[0].points.size());
  for (std::size_t i = 0; i < r.curves[0].points.size(); ++i) {
    const auto& a = r.curves[0].points[i];
    const auto& b = back.curves[0].points[i];
    CHECK(a.x == b.x);
    CHECK(a.reference == b.reference);
    CHECK(a.preasymptotic == b.preasymptotic);
    CHECK(a.asymptotic == b.asymptotic);
    CHECK(a.saturated == b.saturated);
  }
  // JSON objects iterate alphabetically, so locate entries by label
  for (const auto& ent : back.return_levels[0].entries) {
    if (ent.label == "wasserstein:s=1.5") {
      CHECK(ent.preasymptotic == r.return_levels[0].entries[0].preasymptotic);
      CHECK(ent.asym_extrapolated);
    }
  }
  for (const auto& ent : back.return_levels[0].entries) {
    if (ent.label == "triangle") {
      CHECK_FALSE(ent.pre_resolved);
      CHECK_FALSE(ent.asym_resolved);
    } else {
      CHECK(ent.pre_resolved);
    }
  }
  CHECK(text.find("null") != std::string::npos);
  CHECK(text.find("no finite level") != std::string::npos);

  // a second serialization is byte-identical
  CHECK(report_to_json(back).dump(2) == text);
}

TEST_CASE("curve csv is lossless at 17 significant digits") {
  const Report r = make_report();
  const std::string path = "rt_test_curve.csv";
  write_curve_csv(path, r.curves[0], CurveColumn::preasymptotic);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,probability");
  for (const auto& p : r.curves[0].points) {
    std::string line;
    REQUIRE(std::getline(in, line));
    const auto comma = line.find(',');
    CHECK(std::strtod(line.substr(0, comma).c_str(), nullptr) == p.x);
    CHECK(std::strtod(line.substr(comma + 1).c_str(), nullptr) == p.preasymptotic);
  }
  std::remove(path.c_str());
}

TEST_CASE("slugify strips filesystem-hostile characters") {
  CHECK(slugify("wasserstein:s=1.5") == "wasserstein_s_1.5");
  CHECK(slugify("hellinger:2.86") == "hellinger_2.86");
}
