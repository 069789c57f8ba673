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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "robust_tails/errors.hpp"
#include "robust_tails/sample.hpp"
#include "test_support.hpp"

using namespace robust_tails;

TEST_CASE("empirical cdf on a three-point sample") {
  Sample s({1.0, 2.0, 3.0});
  CHECK(s.empirical_cdf(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(s.empirical_cdf(0.5) == 0.0);
  CHECK(s.empirical_cdf(3.0) == 1.0);
}

TEST_CASE("empirical cdf is a valid cdf") {
  rt_test::Rng rng(11);
  std::vector<double> v(200);
  for (auto& x : v) x = 10.0 * rng.uniform();
  Sample s(v);

  double prev = -1.0;
  for (double x = -1.0; x <= 12.0; x += 0.05) {
    const double c = s.empirical_cdf(x);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    prev = c;
  }
  // right-continuity: value at an atom includes the atom
  const double atom = s.values()[50];
  CHECK(s.empirical_cdf(atom) > s.empirical_cdf(atom - 1e-12));
}

TEST_CASE("sample validation") {
  CHECK_THROWS_AS(Sample({}), InputError);
  CHECK_THROWS_AS(Sample({1.0, -0.5}), InputError);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), InputError);
  Sample shuffled({3.0, 1.0, 2.0});
  CHECK(shuffled.values() == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("mean excess examples") {
  Sample s({1.0, 2.0, 3.0});
  const double us[] = {1.5};
  auto curve = mean_excess_curve(s, us);
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].mean_excess == doctest::Approx(1.0));
  CHECK(curve[0].n_exceed == 2);

  Sample single({5.0});
  const double zero[] = {0.0};
  CHECK(mean_excess_curve(single, zero)[0].mean_excess == doctest::Approx(5.0));

  const double too_high[] = {10.0};
  CHECK_THROWS_AS(mean_excess_curve(s, too_high), InputError);
}

TEST_CASE("mean excess of a gpd sample is linear with slope xi/(1-xi)") {
  const double xi = 0.3, sigma = 1.0;
  rt_test::Rng rng(20260809);
  Sample s(rt_test::gpd_sample(rng, xi, sigma, 100000));

  std::vector<double> us;
  for (double q = 0.0; q <= 0.90001; q += 0.05) us.push_back(s.quantile(q));
  auto curve = mean_excess_curve(s, us);
  std::vector<double> xs, ys;
  for (const auto& p : curve) {
    xs.push_back(p.threshold);
    ys.push_back(p.mean_excess);
  }
  const double slope = rt_test::regression_slope(xs, ys);
  CHECK(slope == doctest::Approx(xi / (1.0 - xi)).epsilon(0.10));
}

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "rt_test_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("csv ingestion") {
  SUBCASE("plain column") {
    auto p = write_temp("plain.csv", "1.5\n2.5\n0.25\n");
    Sample s = load_csv(p);
    CHECK(s.size() == 3);
    CHECK(s.min() == 0.25);
    std::remove(p.c_str());
  }
  SUBCASE("header skipped, second column") {
    auto p = write_temp("hdr.csv", "date,claim\n1980-01-03,1.68\n1980-01-04,2.09\n");
    Sample s = load_csv(p, 1);
    CHECK(s.size() == 2);
    CHECK(s.max() == doctest::Approx(2.09));
    std::remove(p.c_str());
  }
  SUBCASE("non-numeric row is rejected with its line number") {
    auto p = write_temp("bad.csv", "1.0\noops\n3.0\n");
    try {
      load_csv(p);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
    std::remove(p.c_str());
  }
  SUBCASE("empty file") {
    auto p = write_temp("empty.csv", "");
    CHECK_THROWS_AS(load_csv(p), InputError);
    std::remove(p.c_str());
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_csv("does_not_exist.csv"), InputError);
  }
}

TEST_CASE("quantile interpolation") {
  Sample s({1.0, 2.0, 3.0, 4.0, 5.0});
  CHECK(s.quantile(0.0) == 1.0);
  CHECK(s.quantile(1.0) == 5.0);
  CHECK(s.quantile(0.5) == doctest::Approx(3.0));
  CHECK(s.quantile(0.875) == doctest::Approx(4.5));
}
