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
#include <span>
#include <string>
#include <vector>

namespace robust_tails {

/**
 * A sample of nonnegative observations, stored in ascending order.
 * Immutable after construction; all accessors are const and thread-safe.
 */
class Sample {
 public:
  /// Validates (finite, >= 0, nonempty) and sorts ascending.
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  /// Right-continuous empirical CDF: #{x_i <= x} / n.
  double empirical_cdf(double x) const;

  /// Empirical survival: #{x_i > x} / n.
  double empirical_survival(double x) const;

  /// Order-statistic quantile with linear interpolation (q in [0,1]).
  double quantile(double q) const;

  /// Observations strictly above u, in ascending order (original units).
  std::vector<double> tail_values(double u) const;

  /// Excesses x_i - u over the threshold, ascending, strictly positive.
  std::vector<double> excesses(double u) const;

  std::size_t count_above(double u) const;

 private:
  std::vector<double> values_;
};

struct MeanExcessPoint {
  double threshold;
  double mean_excess;
  std::size_t n_exceed;
};

/// Empirical mean residual life at each threshold; thresholds without
/// exceedances are omitted. Throws InputError when no threshold has any.
std::vector<MeanExcessPoint> mean_excess_curve(const Sample& sample,
                                               std::span<const double> thresholds);

/**
 * Reads one numeric column from a CSV file. `column` is zero-based. A first
 * line that does not parse as a number in the selected column is treated as
 * a header; any other non-numeric row raises InputError with its line number.
 */
Sample load_csv(const std::string& path, std::size_t column = 0);

}  // namespace robust_tails
