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

#include "robust_tails/sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "robust_tails/errors.hpp"

namespace robust_tails {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("Sample: at least one observation required");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("Sample: non-finite observation");
    if (v < 0.0) throw InputError("Sample: negative observation");
  }
  std::sort(values_.begin(), values_.end());
}

double Sample::empirical_cdf(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double Sample::empirical_survival(double x) const {
  return 1.0 - empirical_cdf(x);
}

double Sample::quantile(double q) const {
  if (q < 0.0 || q > 1.0) throw InputError("quantile: q must lie in [0,1]");
  const std::size_t n = values_.size();
  if (n == 1) return values_[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double w = h - static_cast<double>(lo);
  return (1.0 - w) * values_[lo] + w * values_[hi];
}

std::vector<double> Sample::tail_values(double u) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), u);
  return std::vector<double>(it, values_.end());
}

std::vector<double> Sample::excesses(double u) const {
  std::vector<double> out = tail_values(u);
  for (double& v : out) v -= u;
  return out;
}

std::size_t Sample::count_above(double u) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), u);
  return static_cast<std::size_t>(values_.end() - it);
}

std::vector<MeanExcessPoint> mean_excess_curve(const Sample& sample,
                                               std::span<const double> thresholds) {
  std::vector<MeanExcessPoint> out;
  out.reserve(thresholds.size());
  for (double u : thresholds) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (auto it = std::upper_bound(sample.values().begin(), sample.values().end(), u);
         it != sample.values().end(); ++it) {
      sum += *it - u;
      ++cnt;
    }
    if (cnt > 0) out.push_back({u, sum / static_cast<double>(cnt), cnt});
  }
  if (out.empty())
    throw InputError("mean_excess_curve: no threshold has exceedances");
  return out;
}

namespace {

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0' && std::isfinite(out);
}

std::string csv_field(const std::string& line, std::size_t column) {
  std::size_t start = 0;
  for (std::size_t c = 0; c < column; ++c) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) return {};
    start = pos + 1;
  }
  const std::size_t stop = line.find(',', start);
  std::string field = line.substr(start, stop == std::string::npos ? std::string::npos
                                                                   : stop - start);
  const auto a = field.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = field.find_last_not_of(" \t\r");
  return field.substr(a, b - a + 1);
}

}  // namespace

Sample load_csv(const std::string& path, std::size_t column) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);

  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank
    const std::string field = csv_field(line, column);
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (!saw_data && lineno == 1) continue;  // optional header
      std::ostringstream msg;
      msg << path << ":" << lineno << ": non-numeric value in column " << column;
      throw InputError(msg.str());
    }
    saw_data = true;
    values.push_back(v);
  }
  if (values.empty()) throw InputError(path + ": no numeric data found");
  return Sample(std::move(values));
}

}  // namespace robust_tails
