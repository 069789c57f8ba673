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
#include <vector>

#include "robust_tails/divergence.hpp"
#include "robust_tails/gpd.hpp"

namespace robust_tails {

/**
 * A ball of probability measures around the reference model: either a
 * distorted Wasserstein ball (distortion power s) or an f-divergence ball.
 * Renyi radii are mapped to Hellinger radii at construction.
 */
struct AmbiguitySet {
  enum class Kind { wasserstein, f_divergence };
  Kind kind = Kind::wasserstein;
  double delta = 0.0;
  double s = 1.0;           // wasserstein only
  DivergenceSpec spec;      // f-divergence only (effective form)
  std::string label;        // e.g. "wasserstein:s=1.5" or "hellinger:2.86"

  static AmbiguitySet wasserstein(double s, double delta);
  static AmbiguitySet f_divergence(const DivergenceSpec& spec, double delta);
};

struct CurvePoint {
  double x = 0.0;
  double reference = 0.0;      // survival of the reference model
  double preasymptotic = 0.0;  // exact solution of the optimality equations
  double asymptotic = 0.0;     // closed-form / inverse asymptote
  bool saturated = false;
  std::string method;          // method tag of the asymptotic column
};

struct WorstCaseCurve {
  AmbiguitySet ambiguity;
  std::vector<CurvePoint> points;  // ascending in x
};

/// Log- or linearly-spaced evaluation grid; min must exceed the threshold.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 200;
  bool log_spaced = true;

  std::vector<double> build() const;
};

/**
 * Evaluates reference survival, pre-asymptotic and asymptotic worst-case
 * bounds over the grid. Points are independent and evaluated concurrently;
 * `threads` <= 0 picks the hardware count, and the ROBUST_TAILS_THREADS
 * environment variable caps it. Results are deterministic regardless of
 * the thread count.
 */
WorstCaseCurve compute_curve(const TailModel& model, const AmbiguitySet& amb,
                             const GridSpec& grid, int threads = 0);

/// Return level read off a computed curve: the crossing of the given
/// column with probability 1/(period*obs) (log-log interpolation between
/// grid points). Beyond the resolved range the level is extrapolated from
/// the last two points and flagged; when the column does not decay (a
/// constant worst-case bound above the target) no finite level exists and
/// the result is marked unresolved.
struct CurveReturnLevel {
  double level = 0.0;
  bool extrapolated = false;
  bool resolved = true;
};

enum class CurveColumn { reference, preasymptotic, asymptotic };

CurveReturnLevel return_level_from_curve(const WorstCaseCurve& curve,
                                         CurveColumn column, double period_years,
                                         double obs_per_year);

/// Effective thread budget: min(requested or hardware, ROBUST_TAILS_THREADS).
int effective_threads(int requested);

}  // namespace robust_tails
