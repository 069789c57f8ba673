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

#include "robust_tails/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "robust_tails/errors.hpp"
#include "robust_tails/fdiv_bound.hpp"
#include "robust_tails/wasserstein.hpp"

namespace robust_tails {

AmbiguitySet AmbiguitySet::wasserstein(double s, double delta) {
  if (!(s >= 1.0)) throw InputError("AmbiguitySet: s must be >= 1");
  if (!(delta >= 0.0)) throw InputError("AmbiguitySet: delta must be >= 0");
  AmbiguitySet a;
  a.kind = Kind::wasserstein;
  a.s = s;
  a.delta = delta;
  std::ostringstream os;
  os << "wasserstein:s=" << s;
  a.label = os.str();
  return a;
}

AmbiguitySet AmbiguitySet::f_divergence(const DivergenceSpec& spec, double delta) {
  if (!(delta >= 0.0)) throw InputError("AmbiguitySet: delta must be >= 0");
  AmbiguitySet a;
  a.kind = Kind::f_divergence;
  a.label = spec.name();
  if (spec.needs_radius_map() && delta > 0.0) {
    a.delta = renyi_to_hellinger_radius(spec.alpha(), delta);
    a.spec = spec.effective();
  } else {
    a.delta = delta;
    a.spec = spec.effective();
  }
  return a;
}

std::vector<double> GridSpec::build() const {
  if (!(max > min) || points < 2) throw InputError("GridSpec: need max > min and points >= 2");
  if (log_spaced && !(min > 0.0)) throw InputError("GridSpec: log grid needs min > 0");
  std::vector<double> xs(points);
  const double n1 = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / n1;
    xs[i] = log_spaced ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  return xs;
}

int effective_threads(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("ROBUST_TAILS_THREADS")) {
    const int c = std::atoi(cap);
    if (c >= 1 && c < n) n = c;
  }
  return n;
}

namespace {

CurvePoint eval_point(const TailModel& model, const AmbiguitySet& amb, double x) {
  CurvePoint pt;
  pt.x = x;
  pt.reference = model.survival(x);
  if (amb.delta == 0.0) {
    pt.preasymptotic = pt.reference;
    pt.asymptotic = pt.reference;
    pt.method = "reference";
    return pt;
  }
  if (amb.kind == AmbiguitySet::Kind::wasserstein) {
    const WassersteinPoint w = wasserstein_preasymptotic(model, x, amb.s, amb.delta);
    pt.preasymptotic = w.bound;
    pt.saturated = w.saturated;
    pt.asymptotic = wasserstein_asymptotic(x, amb.s, amb.delta);
    pt.method = "asymptotic";
  } else {
    const FdivPointResult pre = solve_bx(pt.reference, amb.spec, amb.delta);
    pt.preasymptotic = pre.bound;
    pt.saturated = pre.saturated;
    const FdivPointResult asym = fdiv_asymptotic_bound(pt.reference, amb.spec, amb.delta);
    pt.asymptotic = asym.bound;
    pt.method = asym.method;
  }
  return pt;
}

}  // namespace

WorstCaseCurve compute_curve(const TailModel& model, const AmbiguitySet& amb,
                             const GridSpec& grid, int threads) {
  model.validate();
  const std::vector<double> xs = grid.build();
  if (xs.front() <= model.u)
    throw InputError("compute_curve: grid must start above the threshold");

  WorstCaseCurve curve;
  curve.ambiguity = amb;
  curve.points.resize(xs.size());

  const int nthreads = std::min<int>(effective_threads(threads),
                                     static_cast<int>(xs.size()));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= xs.size() || failed.load()) return;
      try {
        curve.points[i] = eval_point(model, amb, xs[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error_message = e.what();
        failed.store(true);
        return;
      }
    }
  };

  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw NumericalError("compute_curve: " + error_message);
  return curve;
}

namespace {

double column_value(const CurvePoint& p, CurveColumn c) {
  switch (c) {
    case CurveColumn::reference: return p.reference;
    case CurveColumn::preasymptotic: return p.preasymptotic;
    case CurveColumn::asymptotic: return p.asymptotic;
  }
  return 0.0;
}

}  // namespace

CurveReturnLevel return_level_from_curve(const WorstCaseCurve& curve,
                                         CurveColumn column, double period_years,
                                         double obs_per_year) {
  const double horizon = period_years * obs_per_year;
  if (!(horizon > 1.0))
    throw InputError("return_level_from_curve: period * obs_per_year must exceed 1");
  if (curve.points.empty())
    throw InputError("return_level_from_curve: empty curve");
  const double target = 1.0 / horizon;

  const auto& pts = curve.points;
  if (column_value(pts.front(), column) <= target)
    return {pts.front().x, false};

  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double p1 = column_value(pts[i], column);
    if (p1 <= target) {
      const double p0 = column_value(pts[i - 1], column);
      if (p0 == p1) return {pts[i].x, false};
      // log-log interpolation between the bracketing grid points
      const double t = (std::log(p0) - std::log(target)) /
                       (std::log(p0) - std::log(p1));
      const double lx = std::log(pts[i - 1].x) +
                        t * (std::log(pts[i].x) - std::log(pts[i - 1].x));
      return {std::exp(lx), false};
    }
  }

  // target below the resolved range: extrapolate from the last two points,
  // unless the column has stopped decaying (constant bound above target)
  const CurvePoint& a = pts[pts.size() - 2];
  const CurvePoint& b = pts.back();
  const double pa = column_value(a, column), pb = column_value(b, column);
  if (!(pb < pa))
    return {std::numeric_limits<double>::infinity(), true, false};
  const double slope = (std::log(b.x) - std::log(a.x)) / (std::log(pb) - std::log(pa));
  const double lx = std::log(b.x) + slope * (std::log(target) - std::log(pb));
  const double level = std::exp(lx);
  if (!std::isfinite(level) || level > 1e300)
    return {std::numeric_limits<double>::infinity(), true, false};
  return {level, true, true};
}

}  // namespace robust_tails
