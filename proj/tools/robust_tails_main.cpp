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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "robust_tails/curve.hpp"
#include "robust_tails/divergence.hpp"
#include "robust_tails/errors.hpp"
#include "robust_tails/fdiv_bound.hpp"
#include "robust_tails/gpd.hpp"
#include "robust_tails/oracle.hpp"
#include "robust_tails/radius.hpp"
#include "robust_tails/report.hpp"
#include "robust_tails/sample.hpp"
#include "robust_tails/wasserstein.hpp"

namespace rt = robust_tails;
using nlohmann::json;

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 2 input error, 3 fit failure, 4 numerical failure.";

struct CommonOptions {
  std::string input;
  std::size_t column = 0;
  std::string threshold = "q0.95";  // "q<quantile>" or an explicit value
  std::string out;
};

struct LoadedFit {
  rt::Sample sample;
  rt::FitResult fit;
  std::size_t n_exceedances = 0;
};

double resolve_threshold(const rt::Sample& sample, const std::string& spec) {
  try {
    if (!spec.empty() && spec[0] == 'q') {
      const double q = std::stod(spec.substr(1));
      if (!(q > 0.0 && q < 1.0))
        throw rt::InputError("threshold quantile must lie in (0,1)");
      return sample.quantile(q);
    }
    return std::stod(spec);
  } catch (const rt::InputError&) {
    throw;
  } catch (const std::exception&) {
    throw rt::InputError("bad --threshold value '" + spec +
                         "' (use a number or q<level>, e.g. q0.95)");
  }
}

LoadedFit load_and_fit(const CommonOptions& opt) {
  rt::Sample sample = rt::load_csv(opt.input, opt.column);
  const double u = resolve_threshold(sample, opt.threshold);
  const std::vector<double> exc = sample.excesses(u);
  const double p_u =
      static_cast<double>(exc.size()) / static_cast<double>(sample.size());
  if (exc.empty()) throw rt::InputError("no exceedances above the threshold");
  rt::FitResult fit = rt::fit_gpd_mle(exc, u, p_u);
  return LoadedFit{std::move(sample), std::move(fit), exc.size()};
}

void fill_fit(rt::Report& report, const LoadedFit& lf) {
  report.has_fit = true;
  report.fit = lf.fit;
  report.n = lf.sample.size();
  report.n_exceedances = lf.n_exceedances;
}

void emit_json(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw rt::InputError("cannot open output file: " + out_path);
    f << text << "\n";
  }
  std::cout << text << "\n";
}

double ci_epsilon(const rt::FitResult& fit) {
  // half-width of the 95% interval on the 1/beta = xi scale, upper side
  return fit.xi_ci.second - fit.xi_hat;
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw rt::InputError(std::string("bad ") + what + " value '" + text + "'");
  }
}

// Builds the ambiguity sets for `bounds`, estimating radii where requested.
struct ResolvedAmbiguity {
  rt::AmbiguitySet set;
  rt::RadiusRecord radius;  // filled when the radius was estimated
  bool estimated = false;
};

ResolvedAmbiguity resolve_ambiguity(const LoadedFit& lf, const std::string& token,
                                    const std::string& delta_spec, double s,
                                    int k, std::size_t m, std::uint64_t seed) {
  const rt::TailModel& model = lf.fit.model;
  ResolvedAmbiguity out;
  if (token == "wasserstein") {
    double delta;
    if (delta_spec == "auto") {
      rt::RadiusEstimate est = rt::estimate_delta_wasserstein(model, lf.sample, s);
      delta = est.delta;
      out.radius = {est, s, 0.0};
      out.estimated = true;
    } else {
      delta = parse_number(delta_spec, "--delta");
    }
    out.set = rt::AmbiguitySet::wasserstein(s, delta);
    return out;
  }

  std::string div_token = token;
  double alpha_used = 0.0;
  if (div_token == "hellinger:auto") {
    alpha_used = rt::select_alpha(model.beta, ci_epsilon(lf.fit));
    div_token = "hellinger:" + std::to_string(alpha_used);
  }
  rt::DivergenceSpec spec = rt::DivergenceSpec::parse(div_token);
  double delta;
  if (delta_spec == "auto") {
    if (spec.effective().kind() != rt::DivergenceKind::hellinger &&
        spec.kind() != rt::DivergenceKind::chi_squared)
      throw rt::InputError(
          "automatic radius estimation is available for wasserstein and "
          "hellinger/chi2 ambiguity sets only; pass --delta for " +
          token);
    const double a = spec.kind() == rt::DivergenceKind::chi_squared
                         ? 2.0
                         : spec.alpha();
    const std::size_t n_exc = lf.n_exceedances;
    const int k_eff = k > 0 ? k : static_cast<int>(std::ceil(std::sqrt(
                                      static_cast<double>(n_exc))));
    const std::size_t m_eff = m > 0 ? m : 10 * n_exc;
    rt::RadiusEstimate est =
        rt::estimate_delta_knn_hellinger(model, lf.sample, a, k_eff, m_eff, seed);
    delta = est.delta;
    out.radius = {est, 0.0, a};
    out.estimated = true;
  } else {
    delta = parse_number(delta_spec, "--delta");
  }
  out.set = rt::AmbiguitySet::f_divergence(spec, delta);
  return out;
}

int run_fit(const CommonOptions& opt) {
  LoadedFit lf = load_and_fit(opt);
  rt::Report report;
  fill_fit(report, lf);
  emit_json(rt::report_to_json(report), opt.out);
  return 0;
}

int run_radius(const CommonOptions& opt, const std::vector<double>& s_list,
               const std::string& alpha_spec, int k, std::size_t m,
               std::uint64_t seed) {
  LoadedFit lf = load_and_fit(opt);
  rt::Report report;
  fill_fit(report, lf);

  for (double s : s_list) {
    rt::RadiusEstimate est =
        rt::estimate_delta_wasserstein(lf.fit.model, lf.sample, s);
    report.radii.push_back({est, s, 0.0});
  }

  if (!alpha_spec.empty()) {
    double alpha;
    if (alpha_spec == "auto") {
      const double eps = ci_epsilon(lf.fit);
      alpha = rt::select_alpha(lf.fit.model.beta, eps);
      report.has_alpha = true;
      report.alpha = alpha;
      report.alpha_epsilon = eps;
    } else {
      alpha = parse_number(alpha_spec, "--alpha");
    }
    const std::size_t n_exc = lf.n_exceedances;
    const int k_eff = k > 0 ? k : static_cast<int>(std::ceil(std::sqrt(
                                      static_cast<double>(n_exc))));
    const std::size_t m_eff = m > 0 ? m : 10 * n_exc;
    rt::RadiusEstimate est = rt::estimate_delta_knn_hellinger(
        lf.fit.model, lf.sample, alpha, k_eff, m_eff, seed);
    report.radii.push_back({est, 0.0, alpha});
  }

  emit_json(rt::report_to_json(report), opt.out);
  return 0;
}

rt::GridSpec default_grid(const rt::TailModel& model, double obs_per_year) {
  rt::GridSpec g;
  g.min = model.u * 1.01;
  if (g.min <= 0.0) g.min = 1e-6;
  g.max = rt::return_level(model, 1e4, obs_per_year);
  if (!(g.max > g.min)) g.max = g.min * 1e3;
  g.points = 200;
  g.log_spaced = true;
  return g;
}

rt::GridSpec parse_grid(const std::string& spec, const rt::TailModel& model,
                        double obs_per_year) {
  if (spec.empty() || spec == "auto") return default_grid(model, obs_per_year);
  rt::GridSpec g;
  char mode[8] = "log";
  const int got = std::sscanf(spec.c_str(), "%lf:%lf:%zu:%7s", &g.min, &g.max,
                              &g.points, mode);
  if (got < 3) throw rt::InputError("bad --grid (expected min:max:points[:log|lin])");
  g.log_spaced = std::string(mode) != "lin";
  return g;
}

int run_bounds(const CommonOptions& opt, std::vector<std::string> divergences,
               std::vector<std::string> deltas, const std::vector<double>& s_list,
               const std::string& alpha_spec, const std::string& grid_spec,
               std::vector<double> periods, double obs_per_year, int k,
               std::size_t m, std::uint64_t seed, int threads) {
  LoadedFit lf = load_and_fit(opt);
  const rt::TailModel& model = lf.fit.model;

  if (divergences.empty()) divergences = {"wasserstein", "hellinger:auto"};
  if (deltas.empty()) deltas = {"auto"};
  if (deltas.size() == 1 && divergences.size() > 1)
    deltas.assign(divergences.size(), deltas[0]);
  if (deltas.size() != divergences.size())
    throw rt::InputError("--delta count must be 1 or match --divergence count");

  rt::Report report;
  fill_fit(report, lf);
  report.obs_per_year = obs_per_year;

  std::vector<rt::AmbiguitySet> sets;
  for (auto& token : divergences) {
    if (token == "hellinger") {
      // bare form: the order comes from --alpha (a number or 'auto')
      if (alpha_spec.empty())
        throw rt::InputError("--divergence hellinger needs an order: use "
                             "hellinger:<a>, hellinger:auto, or pass --alpha");
      token = alpha_spec == "auto" ? std::string("hellinger:auto")
                                   : "hellinger:" + std::to_string(parse_number(
                                         alpha_spec, "--alpha"));
    }
    if (token == "hellinger:auto") {
      const double eps = ci_epsilon(lf.fit);
      report.has_alpha = true;
      report.alpha_epsilon = eps;
      report.alpha = rt::select_alpha(model.beta, eps);
      token = "hellinger:" + std::to_string(report.alpha);
    }
  }
  for (std::size_t i = 0; i < divergences.size(); ++i) {
    if (divergences[i] == "wasserstein") {
      if (s_list.empty())
        throw rt::InputError("a wasserstein ambiguity set requires --s");
      for (double s : s_list) {
        if (!(s < model.beta))
          throw rt::InputError("--s must be below the fitted tail index beta");
        ResolvedAmbiguity ra =
            resolve_ambiguity(lf, "wasserstein", deltas[i], s, k, m, seed);
        if (ra.estimated) report.radii.push_back(ra.radius);
        sets.push_back(ra.set);
      }
    } else {
      ResolvedAmbiguity ra =
          resolve_ambiguity(lf, divergences[i], deltas[i], 0.0, k, m, seed);
      if (ra.estimated) report.radii.push_back(ra.radius);
      sets.push_back(ra.set);
    }
  }

  const rt::GridSpec grid = parse_grid(grid_spec, model, obs_per_year);
  for (const auto& amb : sets)
    report.curves.push_back(rt::compute_curve(model, amb, grid, threads));

  if (periods.empty()) periods = {2, 5, 10, 20, 50, 100, 200, 500};
  for (double T : periods) {
    if (!(T * obs_per_year > 1.0)) continue;
    rt::ReturnLevelRow row;
    row.period_years = T;
    row.reference = rt::return_level(model, T, obs_per_year);
    for (const auto& c : report.curves) {
      rt::ReturnLevelEntry ent;
      ent.label = c.ambiguity.label;
      const auto pre = rt::return_level_from_curve(
          c, rt::CurveColumn::preasymptotic, T, obs_per_year);
      const auto asym = rt::return_level_from_curve(
          c, rt::CurveColumn::asymptotic, T, obs_per_year);
      ent.preasymptotic = pre.level;
      ent.pre_extrapolated = pre.extrapolated;
      ent.pre_resolved = pre.resolved;
      ent.asymptotic = asym.level;
      ent.asym_extrapolated = asym.extrapolated;
      ent.asym_resolved = asym.resolved;
      row.entries.push_back(ent);
    }
    report.return_levels.push_back(row);
  }

  // outputs: report.json plus one CSV per curve, suitable for plotting
  std::filesystem::path dir = opt.out.empty() ? "." : opt.out;
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "report.json");
    if (!f) throw rt::InputError("cannot write report.json");
    f << rt::report_to_json(report).dump(2) << "\n";
  }
  if (!report.curves.empty()) {
    rt::write_curve_csv((dir / "reference.csv").string(), report.curves.front(),
                        rt::CurveColumn::reference);
    for (const auto& c : report.curves) {
      const std::string slug = rt::slugify(c.ambiguity.label);
      rt::write_curve_csv((dir / (slug + "_preasymptotic.csv")).string(), c,
                          rt::CurveColumn::preasymptotic);
      rt::write_curve_csv((dir / (slug + "_asymptotic.csv")).string(), c,
                          rt::CurveColumn::asymptotic);
    }
  }

  std::cout << "fit: beta=" << model.beta << " sigma=" << model.sigma
            << " u=" << model.u << " p_u=" << model.p_u << "\n";
  for (const auto& rec : report.radii)
    std::cout << "radius: " << rec.estimate.method
              << " delta=" << rec.estimate.delta << "\n";
  for (const auto& c : report.curves)
    std::cout << "curve: " << c.ambiguity.label << " delta=" << c.ambiguity.delta
              << " (" << c.points.size() << " points)\n";
  std::cout << "wrote " << (dir / "report.json").string() << "\n";
  return 0;
}

// Reproducible verification runs: the naive oracles against the analytic
// solvers, printed per cell.
int run_oracle_check(std::size_t scan_grid, std::size_t n_atoms, bool verbose) {
  int failures = 0;

  // f-divergence: scan vs solve_bx over a small lattice
  const std::vector<rt::DivergenceSpec> specs = {
      rt::DivergenceSpec::kl(), rt::DivergenceSpec::hellinger(2.0),
      rt::DivergenceSpec::chi_squared(), rt::DivergenceSpec::triangle(),
      rt::DivergenceSpec::jeffrey(), rt::DivergenceSpec::jensen_shannon()};
  const std::vector<double> ps = {0.3, 0.1, 0.01};
  for (const auto& spec : specs) {
    const double cap = spec.divergence_cap();
    const double ub = std::isinf(cap) ? 4.0 : cap;
    for (double p : ps) {
      for (int i = 1; i <= 3; ++i) {
        const double delta = ub * static_cast<double>(i) / 4.0;
        rt::DiscreteDistribution ref({1.0, 3.0}, {1.0 - p, p});
        const double scan = rt::fdiv_worstcase_scan(ref, 2.0, spec, delta, scan_grid);
        const double solved = rt::solve_bx(p, spec, delta).bound;
        const double err = std::fabs(scan - solved);
        const bool ok = err <= 1e-5;
        if (!ok) ++failures;
        if (verbose || !ok)
          std::printf("fdiv %-12s p=%.4g delta=%.4g scan=%.10g solver=%.10g err=%.3g %s\n",
                      spec.name().c_str(), p, delta, scan, solved, err,
                      ok ? "ok" : "MISMATCH");
      }
    }
  }

  // wasserstein: greedy on a quantile discretization vs the continuous solver
  const rt::TailModel pareto{1.0, 1.0, 2.0, 0.5};  // survival x^-2 on [1,inf)
  rt::DiscreteDistribution disc =
      rt::DiscreteDistribution::quantile_discretization(pareto, n_atoms);
  for (double x : {3.0, 10.0, 30.0}) {
    for (double delta : {0.1, 0.5, 2.0}) {
      const double greedy = rt::wasserstein_worstcase_greedy(disc, x, 1.0, delta);
      const double cont = rt::wasserstein_preasymptotic(pareto, x, 1.0, delta).bound;
      const double rel = std::fabs(greedy - cont) / cont;
      const bool ok = rel <= 1e-3;
      if (!ok) ++failures;
      if (verbose || !ok)
        std::printf("wass x=%.3g delta=%.3g greedy=%.8g continuous=%.8g rel=%.3g %s\n",
                    x, delta, greedy, cont, rel, ok ? "ok" : "MISMATCH");
    }
  }

  if (failures == 0) {
    std::printf("oracle-check: all comparisons within tolerance\n");
    return 0;
  }
  std::printf("oracle-check: %d mismatches\n", failures);
  throw rt::NumericalError("oracle-check failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "robust_tails: heavy-tail fitting and worst-case tail bounds over "
      "Wasserstein and f-divergence ambiguity sets.\n" +
      std::string(kExitCodeHelp)};
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<double> s_list;
  std::vector<std::string> divergences;
  std::vector<std::string> deltas;
  std::string alpha_spec;
  std::string grid_spec = "auto";
  std::vector<double> periods;
  double obs_per_year = 1.0;
  int k = 0;
  std::size_t m = 0;
  std::uint64_t seed = 20260809;
  int threads = 0;
  std::size_t scan_grid = 100000;
  std::size_t n_atoms = 10000;
  bool verbose = false;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", common.input, "CSV file, one value per row");
    if (needs_input) in->required();
    cmd->add_option("--column", common.column, "zero-based CSV column (default 0)");
    cmd->add_option("--threshold", common.threshold,
                    "threshold: explicit value or q<level> (default q0.95)");
    cmd->add_option("--out", common.out, "output path (directory for bounds)");
  };

  CLI::App* fit = app.add_subcommand("fit", "fit the GPD tail model");
  add_common(fit, true);

  CLI::App* radius = app.add_subcommand("radius", "estimate ambiguity radii");
  add_common(radius, true);
  radius->add_option("--s", s_list, "distortion power(s) for the Wasserstein radius");
  radius->add_option("--alpha", alpha_spec,
                     "Hellinger order for the k-NN radius ('auto' = CI-matched)");
  radius->add_option("--k", k, "k-NN neighbor count (default ceil(sqrt(n_exc)))");
  radius->add_option("--m", m, "synthetic sample size (default 10*n_exc)");
  radius->add_option("--seed", seed, "RNG seed for the k-NN estimator");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "compute worst-case bound curves and return levels");
  add_common(bounds, true);
  bounds->add_option("--divergence", divergences,
                     "ambiguity sets: wasserstein | kl | hellinger:a | "
                     "hellinger:auto | chi2 | triangle | jeffrey | js | renyi:a "
                     "(repeatable; default wasserstein + hellinger:auto)");
  bounds->add_option("--delta", deltas,
                     "radius per ambiguity set: number or 'auto' (default auto)");
  bounds->add_option("--s", s_list, "distortion power(s) for wasserstein curves");
  bounds->add_option("--alpha", alpha_spec,
                     "Hellinger order for a bare --divergence hellinger entry");
  bounds->add_option("--grid", grid_spec, "x grid: min:max:points[:log|lin] or auto");
  bounds->add_option("--periods", periods, "return periods in years");
  bounds->add_option("--obs-per-year", obs_per_year, "observations per year (default 1)");
  bounds->add_option("--k", k, "k-NN neighbor count for auto Hellinger radius");
  bounds->add_option("--m", m, "synthetic sample size for auto Hellinger radius");
  bounds->add_option("--seed", seed, "RNG seed");
  bounds->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "run the brute-force oracles against the solvers");
  oracle->add_option("--grid-size", scan_grid, "f-divergence scan grid (default 1e5)");
  oracle->add_option("--atoms", n_atoms, "discretization size (default 1e4)");
  oracle->add_flag("--verbose", verbose, "print every comparison");

  try {
    app.parse(argc, argv);
    if (fit->parsed()) return run_fit(common);
    if (radius->parsed())
      return run_radius(common, s_list, alpha_spec, k, m, seed);
    if (bounds->parsed())
      return run_bounds(common, divergences, deltas, s_list, alpha_spec,
                        grid_spec, periods, obs_per_year, k, m, seed, threads);
    if (oracle->parsed()) return run_oracle_check(scan_grid, n_atoms, verbose);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const rt::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rt::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 3;
  } catch (const rt::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
