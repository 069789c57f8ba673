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

#include "robust_tails/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robust_tails/errors.hpp"
#include "robust_tails/numerics.hpp"
#include "robust_tails/wasserstein.hpp"

namespace robust_tails {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double uniform01_at(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t bits = splitmix64(seed ^ splitmix64(index));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double sample_conditional_gpd(const TailModel& model, double u01) {
  // conditional survival (1 + (y-u)/(beta sigma))^(-beta) inverted at 1-u01
  return model.u +
         model.beta * model.sigma * (std::pow(1.0 - u01, -1.0 / model.beta) - 1.0);
}

RadiusEstimate estimate_delta_wasserstein(const TailModel& model,
                                          const Sample& sample, double s) {
  model.validate();
  if (!(s >= 1.0)) throw InputError("estimate_delta_wasserstein: s must be >= 1");
  if (!(s < model.beta))
    throw NumericalError("estimate_delta_wasserstein: divergent (s >= beta)");

  const std::vector<double> tail = sample.tail_values(model.u);
  if (tail.empty())
    throw InputError("estimate_delta_wasserstein: no exceedances above threshold");
  const double n = static_cast<double>(sample.size());

  // Piecewise over order-statistic intervals: on each, the empirical
  // survival is constant and the model survival is smooth and decreasing;
  // split at the single crossing when there is one.
  auto model_minus = [&](double c, double a, double b) {
    // integral of |survival(y) - c| s y^(s-1) over [a, b], constant sign
    auto f = [&](double y) {
      return std::fabs(model.survival(y) - c) * s * std::pow(y, s - 1.0);
    };
    if (b <= a) return 0.0;
    return integrate_adaptive(f, a, b, 1e-12, 1e-16, 20000);
  };

  double total = 0.0;
  double a = model.u;
  std::size_t i = 0;
  const std::size_t kTail = tail.size();
  while (i <= kTail) {
    // empirical survival on [a, b): mass strictly above a among tail values
    const double b = i < kTail ? tail[i] : tail.back();
    const double c = static_cast<double>(kTail - i) / n;
    if (b > a) {
      const double sa = model.survival(a);
      const double sb = model.survival(b);
      if ((sa - c) * (sb - c) < 0.0 && c > 0.0 && c < model.p_u) {
        const double ystar = model.quantile_of_survival(c);
        total += model_minus(c, a, ystar) + model_minus(c, ystar, b);
      } else {
        total += model_minus(c, a, b);
      }
    }
    if (i == kTail) break;
    // advance over duplicates
    std::size_t j = i;
    while (j < kTail && tail[j] == tail[i]) ++j;
    a = tail[i];
    i = j;
  }

  total += gpd_survival_weighted_tail(model, tail.back(), s);
  return RadiusEstimate{total, "wasserstein-empirical", 0, 0};
}

namespace {

// k-th nearest-neighbor distance from q to the sorted array `pts`,
// optionally skipping one index (the query point itself).
double kth_distance(const std::vector<double>& pts, double q, int k,
                    std::ptrdiff_t skip) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pts.size());
  std::ptrdiff_t hi =
      std::lower_bound(pts.begin(), pts.end(), q) - pts.begin();
  std::ptrdiff_t lo = hi - 1;
  double d = 0.0;
  for (int taken = 0; taken < k; ++taken) {
    if (lo == skip) --lo;
    if (hi == skip) ++hi;
    const double dl = lo >= 0 ? q - pts[lo] : std::numeric_limits<double>::infinity();
    const double dr = hi < n ? pts[hi] - q : std::numeric_limits<double>::infinity();
    if (dl <= dr) {
      d = dl;
      --lo;
    } else {
      d = dr;
      ++hi;
    }
  }
  return d;
}

struct KnnDistances {
  std::vector<double> rho;  // within-sample
  std::vector<double> nu;   // cross-sample
  bool has_zero = false;
};

KnnDistances knn_distances(const std::vector<double>& xs,
                           const std::vector<double>& ys, int k) {
  KnnDistances out;
  out.rho.resize(xs.size());
  out.nu.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // xs is sorted, so the query point sits at index i (stable for ties:
    // skipping any one tied copy yields the same distance).
    out.rho[i] = kth_distance(xs, xs[i], k, static_cast<std::ptrdiff_t>(i));
    out.nu[i] = kth_distance(ys, xs[i], k, -1);
    if (out.rho[i] == 0.0 || out.nu[i] == 0.0) out.has_zero = true;
  }
  return out;
}

}  // namespace

double knn_hellinger_divergence(std::span<const double> x,
                                std::span<const double> y, double alpha, int k,
                                std::uint64_t jitter_seed) {
  if (!(alpha > 1.0)) throw InputError("knn_hellinger: alpha must exceed 1");
  if (static_cast<double>(k) - alpha + 1.0 <= 0.0)
    throw InputError("knn_hellinger: k too small for the bias correction (need k > alpha - 1)");
  const std::size_t n = x.size(), m = y.size();
  if (k < 1 || static_cast<std::size_t>(k) >= std::min(n, m))
    throw InputError("knn_hellinger: need 1 <= k < min(n, m)");

  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  KnnDistances d = knn_distances(xs, ys, k);
  if (d.has_zero) {
    // Tied observations (coarse recording precision): one round of seeded
    // uniform jitter at 1e-9 of the data scale.
    const double lo = std::min(xs.front(), ys.front());
    const double hi = std::max(xs.back(), ys.back());
    const double mag = 1e-9 * std::max(hi - lo, 1e-300);
    for (std::size_t i = 0; i < xs.size(); ++i)
      xs[i] += (2.0 * uniform01_at(jitter_seed, i) - 1.0) * mag;
    for (std::size_t j = 0; j < ys.size(); ++j)
      ys[j] += (2.0 * uniform01_at(jitter_seed, xs.size() + j) - 1.0) * mag;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    d = knn_distances(xs, ys, k);
    if (d.has_zero)
      throw NumericalError("knn_hellinger: zero distances persist after jitter");
  }

  const double bias = std::exp(2.0 * std::lgamma(k) - std::lgamma(k - alpha + 1.0) -
                               std::lgamma(k + alpha - 1.0));
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ratio = (static_cast<double>(n - 1) * d.rho[i]) /
                         (static_cast<double>(m) * d.nu[i]);
    acc += std::pow(ratio, 1.0 - alpha);
  }
  const double D = acc / static_cast<double>(n) * bias;
  return std::max(0.0, (D - 1.0) / (alpha - 1.0));
}

RadiusEstimate estimate_delta_knn_hellinger(const TailModel& model,
                                            const Sample& sample, double alpha,
                                            int k, std::size_t m,
                                            std::uint64_t seed) {
  model.validate();
  const std::vector<double> data = sample.tail_values(model.u);
  if (data.size() < 2)
    throw InputError("estimate_delta_knn_hellinger: need at least 2 exceedances");
  if (m < data.size())
    throw InputError("estimate_delta_knn_hellinger: m must be at least the exceedance count");

  std::vector<double> synthetic(m);
  for (std::size_t i = 0; i < m; ++i)
    synthetic[i] = sample_conditional_gpd(model, uniform01_at(seed, i));

  const double h =
      knn_hellinger_divergence(data, synthetic, alpha, k, splitmix64(seed));
  return RadiusEstimate{h, "knn-hellinger", k, m};
}

double select_alpha(double beta_hat, double epsilon) {
  if (!(epsilon > 0.0)) throw InputError("select_alpha: epsilon must be positive");
  if (!(beta_hat > 0.0)) throw InputError("select_alpha: beta_hat must be positive");
  const double eb = epsilon * beta_hat;
  return (1.0 + eb) / eb;
}

}  // namespace robust_tails
