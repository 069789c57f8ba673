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

#include "robust_tails/divergence.hpp"

namespace robust_tails {

/**
 * Worst-case exceedance probability over an f-divergence ball, at one
 * reference tail probability p_x. The optimal likelihood ratio is two-level,
 * L* = a_x on {X <= x} and b_x on {X > x}; the bound is b_x * p_x. When the
 * radius allows moving all feasible mass above x the point saturates and
 * the bound is 1.
 */
struct FdivPointResult {
  double p_x = 0.0;
  double b_x = 0.0;       // upper likelihood-ratio level (NaN when saturated)
  double a_x = 0.0;       // lower level (1 - p_x b_x)/(1 - p_x)
  double bound = 0.0;     // worst-case probability, in [p_x, 1]
  double lambda1 = 0.0;   // dual diagnostics (may be non-finite)
  double lambda2 = 0.0;
  bool saturated = false;
  std::string method = "preasymptotic";
};

/// Feasibility edge at tail probability p: f~*(p) + (1-p) f~(0). The
/// two-level root exists iff this exceeds delta.
double fdiv_saturation_threshold(const DivergenceSpec& spec, double p_x);

/**
 * Solves the pre-asymptotic equation
 *   (1-p) f((1 - p b)/(1-p)) + p f(b) = delta
 * for b in (1, 1/p) by bisection (the map is continuous and increasing).
 * Renyi specs are converted to Hellinger with the mapped radius. A radius
 * at or above f~(0)+f~*(0) makes the ambiguity set degenerate: bound 1.
 */
FdivPointResult solve_bx(double p_x, const DivergenceSpec& spec, double delta);

/**
 * Asymptotic worst-case probability at reference tail probability p_x:
 * f~inverse(delta/p_x) * p_x when f~*(0) = inf, the constant ell otherwise.
 */
FdivPointResult fdiv_asymptotic_bound(double p_x, const DivergenceSpec& spec,
                                      double delta);

/// Unique root of ell*f~*(0) + f~(1-ell) = delta on (0, 1]; requires a
/// finite f~*(0) (Triangle, Jensen-Shannon).
double solve_ell(const DivergenceSpec& spec, double delta);

/**
 * Closed-form description of the worst-case tail for a reference with
 * p_x ~ (x/(beta*sigma))^(-beta): a power tail, a logarithmic decay
 * delta/(beta log x), or a constant level ell, depending on the divergence.
 */
struct TailAsymptote {
  enum class Shape { power, logarithmic, constant };
  Shape shape = Shape::power;
  double beta_star = 0.0;   // power shape
  double sigma_star = 0.0;  // power shape
  double level = 0.0;       // log coefficient delta/beta, or the constant ell

  double evaluate(double x) const;
};

TailAsymptote closed_form_params(const DivergenceSpec& spec, double beta_hat,
                                 double sigma_hat, double delta);

}  // namespace robust_tails
