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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "robust_tails/errors.hpp"

namespace robust_tails {

/**
 * Bisection root finder on [lo, hi] for a continuous f with f(lo) and f(hi)
 * of opposite sign (or zero). Converges unconditionally; the iteration cap
 * is generous enough that the interval collapses to one ulp first.
 */
template <typename F>
double bisect_root(F&& f, double lo, double hi, int max_iter = 200,
                   double xtol_rel = 0.0) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NumericalError("bisect_root: endpoints do not bracket a root");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at ulp resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (xtol_rel > 0.0 &&
        hi - lo <= xtol_rel * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi))))
      break;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (QUADPACK dqk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

/**
 * Adaptive Gauss-Kronrod (G7-K15) quadrature of f on the finite interval
 * [a, b]. Subdivides until the estimated error meets
 * max(abs_tol, rel_tol*|integral|). Throws NumericalError when the interval
 * budget is exhausted without convergence.
 */
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12,
                          double abs_tol = 0.0, std::size_t max_intervals = 4000) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  struct Segment {
    double a, b, value, error;
  };
  auto eval = [&f](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 7; ++j) {
      const double x = detail::kKronrodNodes[j];
      const double fsum = f(c - h * x) + f(c + h * x);
      resk += detail::kKronrodWeights[j] * fsum;
      if (j % 2 == 1) resg += detail::kGaussWeights[j / 2] * fsum;
    }
    const double fc = f(c);
    resk += detail::kKronrodWeights[7] * fc;
    resg += detail::kGaussWeights[3] * fc;
    return Segment{lo, hi, resk * h, std::fabs((resk - resg) * h)};
  };

  std::vector<Segment> segs;
  segs.reserve(256);
  segs.push_back(eval(a, b));
  while (true) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].error;
      if (segs[i].error > worst_err) {
        worst_err = segs[i].error;
        worst = i;
      }
    }
    const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
    if (err <= tol || err <= 1e-300) return sign * total;
    if (segs.size() >= max_intervals)
      throw NumericalError("integrate_adaptive: failed to converge (possibly divergent integrand)");
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) return sign * total;  // resolution floor
    segs[worst] = eval(s.a, mid);
    segs.push_back(eval(mid, s.b));
  }
}

/**
 * Nelder-Mead simplex minimization in two dimensions, used for the GPD
 * likelihood. Tolerance applies to the spread of the simplex function
 * values. Returns the best vertex.
 */
struct NelderMeadResult {
  std::array<double, 2> x;
  double fmin;
  bool converged;
};

template <typename F>
NelderMeadResult nelder_mead_2d(F&& f, std::array<double, 2> start,
                                std::array<double, 2> step, double ftol = 1e-9,
                                int max_iter = 2000) {
  using Point = std::array<double, 2>;
  struct Vertex {
    Point x;
    double fx;
  };
  std::array<Vertex, 3> simplex;
  simplex[0] = {start, f(start)};
  for (int i = 0; i < 2; ++i) {
    Point p = start;
    p[i] += step[i];
    simplex[i + 1] = {p, f(p)};
  }
  auto order = [&]() {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; });
  };
  order();

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(simplex[2].fx - simplex[0].fx) <=
        ftol * (1.0 + std::fabs(simplex[0].fx))) {
      converged = true;
      break;
    }
    const Point centroid = {0.5 * (simplex[0].x[0] + simplex[1].x[0]),
                            0.5 * (simplex[0].x[1] + simplex[1].x[1])};
    auto along = [&](double t) {
      return Point{centroid[0] + t * (centroid[0] - simplex[2].x[0]),
                   centroid[1] + t * (centroid[1] - simplex[2].x[1])};
    };
    const Point xr = along(alpha);
    const double fr = f(xr);
    if (fr < simplex[0].fx) {
      const Point xe = along(gamma);
      const double fe = f(xe);
      simplex[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[1].fx) {
      simplex[2] = {xr, fr};
    } else {
      const Point xc = along(-rho);
      const double fc = f(xc);
      if (fc < simplex[2].fx) {
        simplex[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          for (int d = 0; d < 2; ++d)
            simplex[i].x[d] =
                simplex[0].x[d] + sigma * (simplex[i].x[d] - simplex[0].x[d]);
          simplex[i].fx = f(simplex[i].x);
        }
      }
    }
    order();
  }
  return {simplex[0].x, simplex[0].fx, converged};
}

}  // namespace robust_tails
