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

#include "robust_tails/special.hpp"

#include <cmath>

#include "robust_tails/errors.hpp"

namespace robust_tails {

double lambert_w(double t) {
  if (t < 0.0) throw InputError("lambert_w: argument must be nonnegative");
  if (t == 0.0) return 0.0;

  // Seed: w ~ log t - log log t for large t, w ~ t(1-t) near zero.
  double w;
  const double e = 2.718281828459045235360287;
  if (t > e) {
    const double lt = std::log(t);
    w = lt - std::log(lt);
  } else {
    w = t * (1.0 - t);
    if (w < 0.0) w = 0.5 * t;
  }

  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double r = w * ew - t;  // residual
    if (r == 0.0) break;
    // Halley step for g(w) = w e^w - t.
    const double g1 = ew * (w + 1.0);
    const double g2 = ew * (w + 2.0);
    const double denom = g1 - 0.5 * r * g2 / g1;
    const double step = r / denom;
    w -= step;
    if (w < 0.0) w = 0.0;
    if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(w))) break;
  }
  return w;
}

}  // namespace robust_tails
