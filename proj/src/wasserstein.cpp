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

#include "robust_tails/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robust_tails/errors.hpp"
#include "robust_tails/numerics.hpp"

namespace robust_tails {

double wasserstein_distorted(const std::function<double(double)>& F,
                             const std::function<double(double)>& G, double s,
                             double domain_hi, double tail_term) {
  if (!(s >= 1.0)) throw InputError("wasserstein_distorted: s must be >= 1");
  if (!(domain_hi > 0.0))
    throw InputError("wasserstein_distorted: domain_hi must be positive");
  auto integrand = [&](double y) {
    return std::fabs(F(y) - G(y)) * s * std::pow(y, s - 1.0);
  };
  const double body =
      integrate_adaptive(integrand, 0.0, domain_hi, 1e-10, 1e-14, 20000);
  return body + tail_term;
}

double gpd_survival_weighted_tail(const TailModel& model, double from, double s) {
  if (!(s < model.beta))
    throw NumericalError(
        "gpd_survival_weighted_tail: divergent tail integral (s >= beta)");
  if (from < model.u) throw InputError("gpd_survival_weighted_tail: from < u");
  // Map [from, inf) to (0, 1] with y = from / w.
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double y = from / w;
    return model.survival(y) * s * std::pow(y, s - 1.0) * from / (w * w);
  };
  return integrate_adaptive(integrand, 0.0, 1.0, 1e-12, 0.0, 20000);
}

double transport_cost_integral(const TailModel& model, double V, double x,
                               double s) {
  if (V > x || V < model.u)
    throw InputError("transport_cost_integral: need u <= V <= x");
  if (V == x) return 0.0;
  const double xs = std::pow(x, s);
  auto integrand = [&](double y) {
    return (xs - std::pow(y, s)) * model.tail_density(y);
  };
  return integrate_adaptive(integrand, V, x, 1e-12, 1e-300, 20000);
}

WassersteinPoint solve_U(const TailModel& model, double x, double s, double delta) {
  model.validate();
  if (!(x > model.u)) throw InputError("solve_U: x must exceed the threshold");
  if (!(s >= 1.0)) throw InputError("solve_U: s must be >= 1");
  if (!(s < model.beta)) throw InputError("solve_U: requires s < beta");
  if (!(delta > 0.0)) throw InputError("solve_U: delta must be positive");

  const double xs = std::pow(x, s);
  const double us = std::pow(model.u, s);
  const double layer_cost = transport_cost_integral(model, model.u, x, s);
  const double atom_mass = 1.0 - model.p_u;
  const double atom_cost = atom_mass * (xs - us);

  WassersteinPoint out;
  out.x = x;
  out.method = "preasymptotic";

  if (delta >= layer_cost + atom_cost) {
    out.U = std::numeric_limits<double>::quiet_NaN();
    out.lambda_star = std::numeric_limits<double>::quiet_NaN();
    out.bound = 1.0;
    out.saturated = true;
    out.regime = WassersteinPoint::Regime::saturated;
    return out;
  }
  if (delta >= layer_cost) {
    // Whole GPD layer moved; the remainder of the budget moves part of the
    // sub-threshold mass from u.
    out.U = us;
    out.lambda_star = 1.0 / (xs - us);
    out.bound = model.p_u + (delta - layer_cost) / (xs - us);
    out.regime = WassersteinPoint::Regime::edge_atom;
    return out;
  }

  // integral is strictly decreasing in U; bracket [u^s, x^s]. The power
  // round trip U -> U^(1/s) can land an ulp outside [u, x]; clamp.
  auto g = [&](double U) {
    const double V = std::clamp(std::pow(U, 1.0 / s), model.u, x);
    return transport_cost_integral(model, V, x, s) - delta;
  };
  // g(u^s) = layer_cost - delta > 0, g(x^s) = -delta < 0.
  const double U = bisect_root(g, us, xs, 200);
  out.U = U;
  out.lambda_star = 1.0 / (xs - U);
  out.bound = model.survival(std::clamp(std::pow(U, 1.0 / s), model.u, x));
  out.regime = WassersteinPoint::Regime::interior;
  return out;
}

WassersteinPoint wasserstein_preasymptotic(const TailModel& model, double x,
                                           double s, double delta) {
  return solve_U(model, x, s, delta);
}

double wasserstein_asymptotic(double x, double s, double delta) {
  if (!(x > 0.0)) throw InputError("wasserstein_asymptotic: x must be positive");
  return std::min(1.0, delta * std::pow(x, -s));
}

}  // namespace robust_tails
