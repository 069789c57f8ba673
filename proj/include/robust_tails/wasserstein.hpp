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

#include <functional>
#include <string>

#include "robust_tails/gpd.hpp"

namespace robust_tails {

/**
 * Order-1 Wasserstein distance under the distorted ground cost
 * d(y,z) = |y^s - z^s|, s >= 1, between distributions on [0, inf):
 *
 *   W(F, G) = integral of |F(y) - G(y)| * s * y^(s-1) dy.
 *
 * The integral runs over [0, domain_hi]; `tail_term` adds a caller-supplied
 * closed-form correction for [domain_hi, inf) when the tails do not vanish
 * there. Divergent tails surface as a quadrature failure (NumericalError).
 */
double wasserstein_distorted(const std::function<double(double)>& F,
                             const std::function<double(double)>& G, double s,
                             double domain_hi, double tail_term = 0.0);

/// Integral of survival(y) * s * y^(s-1) over [from, inf) for the tail
/// model; finite exactly when s < beta (else NumericalError).
double gpd_survival_weighted_tail(const TailModel& model, double from, double s);

/**
 * Transport budget needed to move every unit of reference mass in
 * (V, x] up to x under the distorted cost: integral over (V, x] of
 * (x^s - y^s) against the GPD tail density. V must lie in [u, x].
 */
double transport_cost_integral(const TailModel& model, double V, double x,
                               double s);

/**
 * One point of the worst-case Wasserstein curve. Regimes:
 *   interior  - the slackness equation has a root U in (u^s, x^s);
 *               bound = survival(U^(1/s)).
 *   edge_atom - the budget absorbs the whole GPD layer in (u, x] and part
 *               of the sub-threshold mass (treated as sitting at u, the
 *               conservative placement); bound = p_u + moved fraction.
 *   saturated - the budget moves everything below x: bound = 1.
 */
struct WassersteinPoint {
  enum class Regime { interior, edge_atom, saturated };
  double x = 0.0;
  double U = 0.0;            // x^s - 1/lambda*; NaN when saturated
  double bound = 0.0;        // worst-case probability, in [survival(x), 1]
  double lambda_star = 0.0;  // dual multiplier; NaN when saturated
  Regime regime = Regime::interior;
  bool saturated = false;
  std::string method = "preasymptotic";
};

/**
 * Solves the slackness equation
 *   delta = integral_{U^(1/s)}^{x} (x^s - y^s) dF(y)
 * for U in [u^s, x^s] by bisection (the map U -> integral is continuous and
 * strictly decreasing). Requires x > u, s < beta, delta > 0.
 */
WassersteinPoint solve_U(const TailModel& model, double x, double s, double delta);

/// survival(U^(1/s)) with U from solve_U; 1 on saturation.
WassersteinPoint wasserstein_preasymptotic(const TailModel& model, double x,
                                           double s, double delta);

/// min(1, delta * x^(-s)); the worst-case tail index is s.
double wasserstein_asymptotic(double x, double s, double delta);

}  // namespace robust_tails
