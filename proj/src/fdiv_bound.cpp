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

#include "robust_tails/fdiv_bound.hpp"

#include <cmath>
#include <limits>

#include "robust_tails/errors.hpp"
#include "robust_tails/numerics.hpp"

namespace robust_tails {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Renyi balls are Hellinger balls after the radius transform.
void normalize(DivergenceSpec& spec, double& delta) {
  if (spec.needs_radius_map()) {
    delta = renyi_to_hellinger_radius(spec.alpha(), delta);
    spec = spec.effective();
  }
}

FdivPointResult saturated_point(double p_x) {
  FdivPointResult r;
  r.p_x = p_x;
  r.b_x = kNaN;
  r.a_x = kNaN;
  r.lambda1 = kNaN;
  r.lambda2 = kNaN;
  r.bound = 1.0;
  r.saturated = true;
  return r;
}

}  // namespace

double fdiv_saturation_threshold(const DivergenceSpec& spec, double p_x) {
  const DivergenceSpec f = spec.effective();
  // f~*(p) + (1-p) f~(0), the value of the constraint when all mass moves.
  return p_x * f.f_tilted(1.0 / p_x) + (1.0 - p_x) * f.tilted_zero();
}

FdivPointResult solve_bx(double p_x, const DivergenceSpec& spec_in, double delta) {
  if (!(p_x > 0.0 && p_x < 1.0))
    throw InputError("solve_bx: p_x must lie in (0,1)");
  if (!(delta > 0.0)) throw InputError("solve_bx: delta must be positive");

  DivergenceSpec spec = spec_in;
  normalize(spec, delta);

  if (delta >= spec.divergence_cap()) return saturated_point(p_x);
  if (fdiv_saturation_threshold(spec, p_x) <= delta) return saturated_point(p_x);

  const double q = 1.0 - p_x;
  auto T = [&](double b) {
    const double a = (1.0 - b * p_x) / q;
    const double fa = a <= 0.0 ? spec.tilted_zero() : spec.f_tilted(a);
    return p_x * spec.f_tilted(b) + q * fa - delta;
  };

  // T(1) = -delta < 0 and T(1/p) > 0 by the saturation check above.
  const double b = bisect_root(T, 1.0, 1.0 / p_x, 200);

  FdivPointResult r;
  r.p_x = p_x;
  r.b_x = b;
  r.a_x = (1.0 - b * p_x) / q;
  r.bound = b * p_x;
  const double db = spec.f_tilted_prime(b);
  const double da = r.a_x > 0.0 ? spec.f_tilted_prime(r.a_x)
                                : -std::numeric_limits<double>::infinity();
  r.lambda1 = 1.0 / (db - da);
  r.lambda2 = std::isfinite(da) ? r.lambda1 * da : kNaN;
  return r;
}

FdivPointResult fdiv_asymptotic_bound(double p_x, const DivergenceSpec& spec_in,
                                      double delta) {
  if (!(p_x > 0.0 && p_x < 1.0))
    throw InputError("fdiv_asymptotic_bound: p_x must lie in (0,1)");
  if (!(delta > 0.0)) throw InputError("fdiv_asymptotic_bound: delta must be positive");

  DivergenceSpec spec = spec_in;
  normalize(spec, delta);

  FdivPointResult r;
  r.p_x = p_x;
  if (delta >= spec.divergence_cap()) return saturated_point(p_x);

  if (std::isinf(spec.tilted_conj_zero())) {
    r.b_x = spec.inverse_tail(delta / p_x);
    r.bound = r.b_x * p_x;
    r.method = "asymptotic-inverse";
    if (r.bound >= 1.0) {
      r.bound = 1.0;
      r.saturated = true;
    }
  } else {
    r.bound = solve_ell(spec, delta);
    r.b_x = r.bound / p_x;
    r.method = "asymptotic-ell";
  }
  return r;
}

double solve_ell(const DivergenceSpec& spec_in, double delta) {
  DivergenceSpec spec = spec_in;
  normalize(spec, delta);
  const double fstar0 = spec.tilted_conj_zero();
  if (std::isinf(fstar0))
    throw InputError("solve_ell: requires a divergence with finite f~*(0)");
  if (!(delta > 0.0 && delta < spec.divergence_cap()))
    throw InputError("solve_ell: delta must lie in (0, f~(0)+f~*(0))");

  // g(l) = l f~*(0) + f~(1-l) is strictly increasing with g(0)=0,
  // g(1) = f~*(0) + f~(0).
  auto g = [&](double l) {
    return l * fstar0 + spec.f_tilted(1.0 - l) - delta;
  };
  return bisect_root(g, 0.0, 1.0, 200);
}

double TailAsymptote::evaluate(double x) const {
  double v = 0.0;
  switch (shape) {
    case Shape::power:
      v = std::pow(x / (beta_star * sigma_star), -beta_star);
      break;
    case Shape::logarithmic:
      v = x > 1.0 ? level / std::log(x) : 1.0;
      break;
    case Shape::constant:
      v = level;
      break;
  }
  return std::min(1.0, v);
}

TailAsymptote closed_form_params(const DivergenceSpec& spec_in, double beta_hat,
                                 double sigma_hat, double delta) {
  if (!(beta_hat > 0.0) || !(sigma_hat > 0.0))
    throw InputError("closed_form_params: reference parameters must be positive");
  DivergenceSpec spec = spec_in;
  normalize(spec, delta);

  TailAsymptote out;
  switch (spec.kind()) {
    case DivergenceKind::kl:
    case DivergenceKind::jeffrey:
      out.shape = TailAsymptote::Shape::logarithmic;
      out.level = delta / beta_hat;
      return out;
    case DivergenceKind::chi_squared: {
      out.shape = TailAsymptote::Shape::power;
      out.beta_star = 0.5 * beta_hat;
      out.sigma_star = 2.0 * std::pow(delta, 1.0 / beta_hat) * sigma_hat;
      return out;
    }
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi: {
      const double a = spec.alpha();
      out.shape = TailAsymptote::Shape::power;
      out.beta_star = (a - 1.0) / a * beta_hat;
      const double e = 1.0 / (beta_hat * (a - 1.0));
      out.sigma_star = a * std::pow(a - 1.0, e - 1.0) * std::pow(delta, e) * sigma_hat;
      return out;
    }
    case DivergenceKind::triangle:
    case DivergenceKind::jensen_shannon:
      out.shape = TailAsymptote::Shape::constant;
      out.level = solve_ell(spec, delta);
      return out;
  }
  throw InputError("closed_form_params: unsupported divergence kind");
}

}  // namespace robust_tails
