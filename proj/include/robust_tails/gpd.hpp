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

#include <span>
#include <utility>

namespace robust_tails {

/**
 * Semi-parametric heavy-tail model above a threshold u:
 *
 *   P(X > x) = p_u * (1 + (x-u)/(beta*sigma))^(-beta),   x >= u,
 *
 * with tail index beta > 0 and scale sigma > 0. The GPD shape is
 * xi = 1/beta; in the usual (xi, sigma_g) parametrization sigma_g = sigma.
 */
struct TailModel {
  double u = 0.0;      // threshold (claim units)
  double p_u = 1.0;    // exceedance probability P(X > u), in (0, 1]
  double beta = 1.0;   // tail index, > 0
  double sigma = 1.0;  // scale, > 0

  double xi() const { return 1.0 / beta; }

  /// P(X > x) for x >= u. Throws InputError below the threshold.
  double survival(double x) const;

  /// Conditional exceedance survival P(X > x | X > u) for x >= u.
  double conditional_survival(double x) const;

  /// Density of the tail part, survival'(x) negated, for x >= u.
  double tail_density(double x) const;

  /// Inverse of survival: the x >= u with survival(x) = p, for p in (0, p_u].
  double quantile_of_survival(double p) const;

  void validate() const;
};

struct FitResult {
  TailModel model;
  double xi_hat = 0.0;                      // fitted GPD shape
  double se_xi = 0.0;                       // standard error of xi_hat
  std::pair<double, double> xi_ci{0, 0};    // 95% Wald interval for xi
  double loglik = 0.0;
};

/**
 * Maximum-likelihood GPD fit to positive excesses y_i = x_i - u.
 * Nelder-Mead on (log sigma, xi) with multi-start from the moment
 * estimator; Wald confidence interval from numerically differentiated
 * observed information. Rejects non-heavy-tailed fits (xi <= 0).
 */
FitResult fit_gpd_mle(std::span<const double> excesses, double threshold,
                      double p_u);

/// GPD log-likelihood of the excesses at (xi, sigma); -inf outside support.
double gpd_loglik(std::span<const double> excesses, double xi, double sigma);

/**
 * Smallest level exceeded on average once per `period * obs_per_year`
 * observations; requires period * obs_per_year > 1. Targets above p_u
 * resolve to the threshold itself.
 */
double return_level(const TailModel& model, double period_years,
                    double obs_per_year);

}  // namespace robust_tails
