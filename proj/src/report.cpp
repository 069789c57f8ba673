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

#include "robust_tails/report.hpp"

#include <cstdio>
#include <fstream>

#include "robust_tails/errors.hpp"

namespace robust_tails {

using nlohmann::json;

namespace {

json ambiguity_to_json(const AmbiguitySet& a) {
  json j;
  j["label"] = a.label;
  j["delta"] = a.delta;
  if (a.kind == AmbiguitySet::Kind::wasserstein) {
    j["kind"] = "wasserstein";
    j["s"] = a.s;
  } else {
    j["kind"] = "f-divergence";
    j["divergence"] = a.spec.name();
  }
  return j;
}

AmbiguitySet ambiguity_from_json(const json& j) {
  AmbiguitySet a;
  if (j.at("kind") == "wasserstein") {
    a = AmbiguitySet::wasserstein(j.at("s").get<double>(), j.at("delta").get<double>());
  } else {
    a = AmbiguitySet::f_divergence(
        DivergenceSpec::parse(j.at("divergence").get<std::string>()),
        j.at("delta").get<double>());
  }
  a.label = j.at("label").get<std::string>();
  return a;
}

}  // namespace

json report_to_json(const Report& r) {
  json j;
  if (r.has_fit) {
    json f;
    f["u"] = r.fit.model.u;
    f["p_u"] = r.fit.model.p_u;
    f["beta"] = r.fit.model.beta;
    f["sigma"] = r.fit.model.sigma;
    f["xi"] = r.fit.xi_hat;
    f["se_xi"] = r.fit.se_xi;
    f["xi_ci"] = {r.fit.xi_ci.first, r.fit.xi_ci.second};
    f["loglik"] = r.fit.loglik;
    f["n"] = r.n;
    f["n_exceedances"] = r.n_exceedances;
    j["fit"] = f;
  }
  if (!r.radii.empty()) {
    json arr = json::array();
    for (const auto& rec : r.radii) {
      json e;
      e["method"] = rec.estimate.method;
      e["delta"] = rec.estimate.delta;
      if (rec.estimate.method == "knn-hellinger") {
        e["k"] = rec.estimate.k;
        e["m"] = rec.estimate.m;
        e["alpha"] = rec.alpha;
      } else {
        e["s"] = rec.s;
      }
      arr.push_back(e);
    }
    j["radius_estimates"] = arr;
  }
  if (r.has_alpha) {
    j["alpha_selection"] = {{"alpha", r.alpha}, {"epsilon", r.alpha_epsilon}};
  }
  if (!r.curves.empty()) {
    json arr = json::array();
    for (const auto& c : r.curves) {
      json jc;
      jc["ambiguity"] = ambiguity_to_json(c.ambiguity);
      json rows = json::array();
      for (const auto& p : c.points) {
        rows.push_back({{"x", p.x},
                        {"reference", p.reference},
                        {"preasymptotic", p.preasymptotic},
                        {"asymptotic", p.asymptotic},
                        {"saturated", p.saturated},
                        {"method", p.method}});
      }
      jc["rows"] = rows;
      arr.push_back(jc);
    }
    j["curves"] = arr;
  }
  if (!r.return_levels.empty()) {
    j["obs_per_year"] = r.obs_per_year;
    json arr = json::array();
    for (const auto& row : r.return_levels) {
      json e;
      e["period_years"] = row.period_years;
      e["reference"] = row.reference;
      e["reference_extrapolated"] = row.reference_extrapolated;
      json curves = json::object();
      for (const auto& ent : row.entries) {
        json c;
        if (ent.pre_resolved) {
          c["preasymptotic"] = ent.preasymptotic;
        } else {
          c["preasymptotic"] = nullptr;
          c["pre_reason"] = "no finite level: bound stays above the target probability";
        }
        if (ent.asym_resolved) {
          c["asymptotic"] = ent.asymptotic;
        } else {
          c["asymptotic"] = nullptr;
          c["asym_reason"] = "no finite level: bound stays above the target probability";
        }
        c["pre_extrapolated"] = ent.pre_extrapolated;
        c["asym_extrapolated"] = ent.asym_extrapolated;
        curves[ent.label] = c;
      }
      e["curves"] = curves;
      arr.push_back(e);
    }
    j["return_levels"] = arr;
  }
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  if (j.contains("fit")) {
    const json& f = j.at("fit");
    r.has_fit = true;
    r.fit.model = TailModel{f.at("u").get<double>(), f.at("p_u").get<double>(),
                            f.at("beta").get<double>(), f.at("sigma").get<double>()};
    r.fit.xi_hat = f.at("xi").get<double>();
    r.fit.se_xi = f.at("se_xi").get<double>();
    r.fit.xi_ci = {f.at("xi_ci")[0].get<double>(), f.at("xi_ci")[1].get<double>()};
    r.fit.loglik = f.at("loglik").get<double>();
    r.n = f.at("n").get<std::size_t>();
    r.n_exceedances = f.at("n_exceedances").get<std::size_t>();
  }
  if (j.contains("radius_estimates")) {
    for (const auto& e : j.at("radius_estimates")) {
      RadiusRecord rec;
      rec.estimate.method = e.at("method").get<std::string>();
      rec.estimate.delta = e.at("delta").get<double>();
      if (e.contains("k")) rec.estimate.k = e.at("k").get<int>();
      if (e.contains("m")) rec.estimate.m = e.at("m").get<std::size_t>();
      if (e.contains("alpha")) rec.alpha = e.at("alpha").get<double>();
      if (e.contains("s")) rec.s = e.at("s").get<double>();
      r.radii.push_back(rec);
    }
  }
  if (j.contains("alpha_selection")) {
    r.has_alpha = true;
    r.alpha = j.at("alpha_selection").at("alpha").get<double>();
    r.alpha_epsilon = j.at("alpha_selection").at("epsilon").get<double>();
  }
  if (j.contains("curves")) {
    for (const auto& jc : j.at("curves")) {
      WorstCaseCurve c;
      c.ambiguity = ambiguity_from_json(jc.at("ambiguity"));
      for (const auto& row : jc.at("rows")) {
        CurvePoint p;
        p.x = row.at("x").get<double>();
        p.reference = row.at("reference").get<double>();
        p.preasymptotic = row.at("preasymptotic").get<double>();
        p.asymptotic = row.at("asymptotic").get<double>();
        p.saturated = row.at("saturated").get<bool>();
        p.method = row.at("method").get<std::string>();
        c.points.push_back(p);
      }
      r.curves.push_back(std::move(c));
    }
  }
  if (j.contains("return_levels")) {
    r.obs_per_year = j.value("obs_per_year", 1.0);
    for (const auto& e : j.at("return_levels")) {
      ReturnLevelRow row;
      row.period_years = e.at("period_years").get<double>();
      row.reference = e.at("reference").get<double>();
      row.reference_extrapolated = e.at("reference_extrapolated").get<bool>();
      for (const auto& [label, v] : e.at("curves").items()) {
        ReturnLevelEntry ent;
        ent.label = label;
        if (v.at("preasymptotic").is_null()) {
          ent.pre_resolved = false;
        } else {
          ent.preasymptotic = v.at("preasymptotic").get<double>();
        }
        if (v.at("asymptotic").is_null()) {
          ent.asym_resolved = false;
        } else {
          ent.asymptotic = v.at("asymptotic").get<double>();
        }
        ent.pre_extrapolated = v.at("pre_extrapolated").get<bool>();
        ent.asym_extrapolated = v.at("asym_extrapolated").get<bool>();
        row.entries.push_back(ent);
      }
      r.return_levels.push_back(std::move(row));
    }
  }
  return r;
}

void write_curve_csv(const std::string& path, const WorstCaseCurve& curve,
                     CurveColumn column) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InputError("cannot open output file: " + path);
  std::fprintf(f, "x,probability\n");
  for (const auto& p : curve.points) {
    double v = p.reference;
    if (column == CurveColumn::preasymptotic) v = p.preasymptotic;
    if (column == CurveColumn::asymptotic) v = p.asymptotic;
    std::fprintf(f, "%.17g,%.17g\n", p.x, v);
  }
  std::fclose(f);
}

std::string slugify(const std::string& label) {
  std::string out;
  out.reserve(label.size());
  for (char c : label) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9') || c == '.' || c == '-') {
      out.push_back(c);
    } else {
      out.push_back('_');
    }
  }
  return out;
}

}  // namespace robust_tails
