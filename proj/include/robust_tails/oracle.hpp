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

#include <cstddef>
#include <vector>

#include "robust_tails/divergence.hpp"
#include "robust_tails/gpd.hpp"

namespace robust_tails {

/**
 * Finite-support distribution used as ground truth in verification runs.
 * The oracles in this module are deliberately naive (grid scans, greedy
 * transport) and share no code with the analytic solvers they check.
 */
struct DiscreteDistribution {
  std::vector<double> atoms;  // strictly ascending
  std::vector<double> probs;  // nonnegative, sum to 1 within 1e-12

  DiscreteDistribution(std::vector<double> atoms_, std::vector<double> probs_);

  double mass_above(double x) const;    // strict
  double mass_at_least(double x) const;

  /// n equal-mass atoms at conditional quantile midpoints of the tail
  /// model, plus the sub-threshold mass as an atom at the threshold.
  static DiscreteDistribution quantile_discretization(const TailModel& model,
                                                      std::size_t n_atoms);
};

/**
 * Worst-case mass above x over an f-divergence ball, by scanning the moved
 * mass m over a uniform grid on [p, 1] and keeping the largest feasible
 * value, where feasibility is the two-block divergence
 * (1-p) f((1-m)/(1-p)) + p f(m/p) <= delta. One local bisection between the
 * last feasible and first infeasible grid points refines the frontier.
 */
double fdiv_worstcase_scan(const DiscreteDistribution& ref, double x,
                           const DivergenceSpec& spec, double delta,
                           std::size_t grid_size);

/**
 * Exact worst-case mass at or above x over a distorted Wasserstein ball on
 * a finite support: move atoms below x up to x cheapest-first (descending
 * atom order, unit cost x^s - y^s), spending the budget delta, with a
 * partial move when the budget binds.
 */
double wasserstein_worstcase_greedy(const DiscreteDistribution& ref, double x,
                                    double s, double delta);

/// Exact distorted 1-D Wasserstein distance between finite supports:
/// sum over CDF step intervals of |F - G| * (y_{i+1}^s - y_i^s).
double wasserstein_distance_discrete(const DiscreteDistribution& p,
                                     const DiscreteDistribution& q, double s);

/// The distribution produced by the greedy transport above (for feasibility
/// checks: its distance from ref must not exceed delta).
DiscreteDistribution wasserstein_greedy_transported(const DiscreteDistribution& ref,
                                                    double x, double s,
                                                    double delta);

}  // namespace robust_tails
