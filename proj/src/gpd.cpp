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

#include "robust_tails/gpd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "robust_tails/errors.hpp"
#include "robust_tails/numerics.hpp"

namespace robust_tails {

void TailModel::validate() const {
  if (!(p_u > 0.0 && p_u <= 1.0)) throw InputError("TailModel: p_u must lie in (0,1]");
  if (!(beta > 0.0)) throw InputError("TailModel: beta must be positive");
  if (!(sigma > 0.0)) throw InputError("TailModel: sigma must be positive");
  if (!(u >= 0.0)) throw InputError("TailModel: threshold must be nonnegative");
}

double TailModel::survival(double x) const {
  if (x < u) throw InputError("TailModel::survival: x below threshold");
  return p_u * std::pow(1.0 + (x - u) / (beta * sigma), -beta);
}

double TailModel::conditional_survival(double x) const {
  if (x < u) throw InputError("TailModel::conditional_survival: x below threshold");
  return std::pow(1.0 + (x - u) / (beta * sigma), -beta);
}

double TailModel::tail_density(double x) const {
  if (x < u) throw InputError("TailModel::tail_density: x below threshold");
  return p_u / sigma * std::pow(1.0 + (x - u) / (beta * sigma), -beta - 1.0);
}

double TailModel::quantile_of_survival(double p) const {
  if (!(p > 0.0 && p <= p_u))
    throw InputError("TailModel::quantile_of_survival: p must lie in (0, p_u]");
  return u + beta * sigma * (std::pow(p_u / p, 1.0 / beta) - 1.0);
}

double gpd_loglik(std::span<const double> excesses, double xi, double sigma) {
  if (sigma <= 0.0) return -std::numeric_limits<double>::infinity();
  double ll = 0.0;
  const double n = static_cast<double>(excesses.size());
  if (std::fabs(xi) < 1e-10) {
    // exponential limit
    for (double y : excesses) ll -= y / sigma;
    return ll - n * std::log(sigma);
  }
  const double c = 1.0 + 1.0 / xi;
  for (double y : excesses) {
    const double z = 1.0 + xi * y / sigma;
    if (z <= 0.0) return -std::numeric_limits<double>::infinity();
    ll -= c * std::log(z);
  }
  return ll - n * std::log(sigma);
}

namespace {

struct MomentStart {
  double xi;
  double sigma;
};

MomentStart moment_estimate(std::span<const double> y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= static_cast<double>(y.size() - 1);
  if (var <= 0.0) return {0.25, std::max(mean, 1e-12)};
  const double r = mean * mean / var;
  double xi = 0.5 * (1.0 - r);
  xi = std::clamp(xi, -0.4, 0.9);
  double sigma = 0.5 * mean * (1.0 + r);
  if (!(sigma > 0.0)) sigma = mean;
  return {xi, sigma};
}

}  // namespace

FitResult fit_gpd_mle(std::span<const double> excesses, double threshold,
                      double p_u) {
  if (excesses.size() < 10)
    throw InputError("fit_gpd_mle: at least 10 exceedances required");
  for (double y : excesses)
    if (!(y > 0.0)) throw InputError("fit_gpd_mle: excesses must be positive");

  const double ymin = *std::min_element(excesses.begin(), excesses.end());
  const double ymax = *std::max_element(excesses.begin(), excesses.end());
  if (ymax - ymin <= 1e-12 * ymax)
    throw FitError("fit_gpd_mle: degenerate sample (all excesses equal)");

  // Negative log-likelihood over t = (log sigma, xi).
  auto objective = [&](std::array<double, 2> t) {
    const double ll = gpd_loglik(excesses, t[1], std::exp(t[0]));
    return std::isfinite(ll) ? -ll : 1e30;
  };

  const MomentStart mom = moment_estimate(excesses);
  double mean = 0.0;
  for (double v : excesses) mean += v;
  mean /= static_cast<double>(excesses.size());

  std::vector<std::array<double, 2>> starts;
  starts.push_back({std::log(mom.sigma), mom.xi});
  for (double xi0 : {0.1, 0.5, 0.9}) {
    const double s0 = std::max(mean * (1.0 - std::min(xi0, 0.95)), 1e-8);
    starts.push_back({std::log(s0), xi0});
  }

  NelderMeadResult best{{0, 0}, std::numeric_limits<double>::infinity(), false};
  for (const auto& s0 : starts) {
    auto r = nelder_mead_2d(objective, s0, {0.2, 0.2}, 1e-9, 3000);
    if (r.fmin < best.fmin) best = r;
  }
  // polish from the current optimum
  best = nelder_mead_2d(objective, best.x, {0.02, 0.02}, 1e-11, 3000);
  if (!best.converged || best.fmin >= 1e29)
    throw FitError("fit_gpd_mle: likelihood maximization did not converge");

  const double sigma_hat = std::exp(best.x[0]);
  const double xi_hat = best.x[1];
  if (xi_hat <= 0.0)
    throw FitError("fit_gpd_mle: fitted shape is not heavy-tailed (xi <= 0)");

  // Observed information via central differences on (xi, sigma).
  auto nll = [&](double xi, double sigma) {
    const double ll = gpd_loglik(excesses, xi, sigma);
    return std::isfinite(ll) ? -ll : 1e30;
  };
  const double hx = 1e-5 * std::max(std::fabs(xi_hat), 1e-2);
  const double hs = 1e-5 * std::max(sigma_hat, 1e-2);
  const double f0 = nll(xi_hat, sigma_hat);
  const double dxx =
      (nll(xi_hat + hx, sigma_hat) - 2 * f0 + nll(xi_hat - hx, sigma_hat)) / (hx * hx);
  const double dss =
      (nll(xi_hat, sigma_hat + hs) - 2 * f0 + nll(xi_hat, sigma_hat - hs)) / (hs * hs);
  const double dxs = (nll(xi_hat + hx, sigma_hat + hs) - nll(xi_hat + hx, sigma_hat - hs) -
                      nll(xi_hat - hx, sigma_hat + hs) + nll(xi_hat - hx, sigma_hat - hs)) /
                     (4 * hx * hs);
  const double det = dxx * dss - dxs * dxs;
  if (!(det > 0.0) || !(dxx > 0.0))
    throw FitError("fit_gpd_mle: observed information not positive definite");
  const double var_xi = dss / det;
  const double se_xi = std::sqrt(var_xi);

  FitResult out;
  out.model = TailModel{threshold, p_u, 1.0 / xi_hat, sigma_hat};
  out.model.validate();
  out.xi_hat = xi_hat;
  out.se_xi = se_xi;
  out.xi_ci = {xi_hat - 1.959963984540054 * se_xi, xi_hat + 1.959963984540054 * se_xi};
  out.loglik = -best.fmin;
  return out;
}

double return_level(const TailModel& model, double period_years,
                    double obs_per_year) {
  const double horizon = period_years * obs_per_year;
  if (!(horizon > 1.0))
    throw InputError("return_level: period * obs_per_year must exceed 1");
  const double target = 1.0 / horizon;
  if (target >= model.p_u) return model.u;
  return model.quantile_of_survival(target);
}

}  // namespace robust_tails
