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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "robust_tails/gpd.hpp"
#include "robust_tails/sample.hpp"

namespace robust_tails {

struct RadiusEstimate {
  double delta = 0.0;
  std::string method;     // "wasserstein-empirical" | "knn-hellinger"
  int k = 0;              // knn only
  std::size_t m = 0;      // knn only
};

/**
 * Empirical distorted-Wasserstein radius: the distance between the fitted
 * tail model and the empirical distribution on [u, inf), both carrying the
 * exceedance mass (the two coincide below the threshold by construction).
 * Exact piecewise integration between order statistics, plus the analytic
 * fitted-tail term beyond the largest observation. Requires s < beta.
 */
RadiusEstimate estimate_delta_wasserstein(const TailModel& model,
                                          const Sample& sample, double s);

/**
 * k-nearest-neighbor Hellinger divergence between two univariate samples:
 *
 *   D = B_{k,a} / n * sum_i [ (n-1) rho_k(x_i) / (m nu_k(x_i)) ]^(1-a),
 *   H = max(0, (D - 1)/(a - 1)),
 *
 * with rho_k / nu_k the k-th nearest-neighbor distances within x and from
 * x into y, and B_{k,a} = Gamma(k)^2 / (Gamma(k-a+1) Gamma(k+a-1)).
 * Tied points that produce zero distances get one round of seeded uniform
 * jitter of magnitude 1e-9 times the data scale.
 */
double knn_hellinger_divergence(std::span<const double> x,
                                std::span<const double> y, double alpha, int k,
                                std::uint64_t jitter_seed = 0);

/**
 * Hellinger radius between the fitted conditional exceedance distribution
 * and the empirical exceedances: draws m synthetic values from the fitted
 * model by inverse-CDF sampling (counter-based, deterministic in the seed)
 * and runs the k-NN estimator above with the data as the x-sample.
 */
RadiusEstimate estimate_delta_knn_hellinger(const TailModel& model,
                                            const Sample& sample, double alpha,
                                            int k, std::size_t m,
                                            std::uint64_t seed);

/// CI-matched Hellinger order: the alpha > 1 with (1/beta) * a/(a-1)
/// equal to 1/beta + epsilon, i.e. a = (1 + eps*beta)/(eps*beta).
double select_alpha(double beta_hat, double epsilon);

/// Deterministic counter-based uniform in [0, 1): value i of the stream
/// identified by seed. Identical results regardless of evaluation order.
double uniform01_at(std::uint64_t seed, std::uint64_t index);

/// Inverse-CDF draw from the conditional exceedance law of the model.
double sample_conditional_gpd(const TailModel& model, double u01);

}  // namespace robust_tails
