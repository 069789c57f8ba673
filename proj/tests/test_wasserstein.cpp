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
#include <functional>
#include <vector>

#include "robust_tails/errors.hpp"
#include "robust_tails/gpd.hpp"
#include "robust_tails/oracle.hpp"
#include "robust_tails/wasserstein.hpp"
#include "test_support.hpp"

using namespace robust_tails;

namespace {

// survival x^-2 on [1, inf) in the semi-parametric form
const TailModel kPareto2{1.0, 1.0, 2.0, 0.5};

// closed-form transport integral for a unit Pareto(beta) reference:
// int_V^x (x^s - y^s) beta y^(-beta-1) dy
double pareto_transport_closed(double beta, double s, double V, double x) {
  return std::pow(x, s) * std::pow(V, -beta) - std::pow(x, s - beta) -
         beta * (std::pow(x, s - beta) - std::pow(V, s - beta)) / (s - beta);
}

std::function<double(double)> step_cdf(std::vector<double> atoms) {
  return [atoms = std::move(atoms)](double y) {
    double c = 0.0;
    for (double a : atoms)
      if (a <= y) c += 1.0 / static_cast<double>(atoms.size());
    return c;
  };
}

}  // namespace

TEST_CASE("distorted wasserstein distance basics") {
  auto F = step_cdf({0.0, 2.0});
  auto G = step_cdf({1.0, 3.0});
  CHECK(wasserstein_distorted(F, F, 1.0, 5.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wasserstein_distorted(F, G, 1.0, 5.0) == doctest::Approx(1.0).epsilon(1e-9));

  // unit point masses: |a^s - b^s|
  auto A = step_cdf({1.0});
  auto B = step_cdf({2.0});
  CHECK(wasserstein_distorted(A, B, 1.0, 5.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(wasserstein_distorted(A, B, 1.5, 5.0) ==
        doctest::Approx(std::pow(2.0, 1.5) - 1.0).epsilon(1e-9));
}

TEST_CASE("divergent tail integral is flagged") {
  TailModel m{1.0, 1.0, 1.4, 1.0};
  CHECK_THROWS_AS(gpd_survival_weighted_tail(m, 2.0, 1.5), NumericalError);
  CHECK(gpd_survival_weighted_tail(m, 2.0, 1.2) > 0.0);
}

TEST_CASE("transport integral matches the pareto closed form") {
  for (double s : {1.0, 1.5}) {
    for (double V : {1.5, 3.0, 8.0}) {
      const double x = 10.0;
      const double got = transport_cost_integral(kPareto2, V, x, s);
      const double want = pareto_transport_closed(2.0, s, V, x);
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("solve_U pareto quadratic case") {
  // 0.4 U^2 + 2U - 10 = 0, root (-5 + sqrt(125))/2
  const auto r = solve_U(kPareto2, 10.0, 1.0, 0.5);
  const double expected_U = 0.5 * (-5.0 + std::sqrt(125.0));
  CHECK(r.regime == WassersteinPoint::Regime::interior);
  CHECK(r.U == doctest::Approx(expected_U).epsilon(1e-9));
  CHECK(r.bound == doctest::Approx(1.0 / (expected_U * expected_U)).epsilon(1e-9));
  CHECK(r.lambda_star == doctest::Approx(1.0 / (10.0 - expected_U)).epsilon(1e-9));
}

TEST_CASE("solve_U zero-radius limit and monotonicity") {
  const auto tiny = solve_U(kPareto2, 10.0, 1.0, 1e-10);
  CHECK(tiny.bound == doctest::Approx(kPareto2.survival(10.0)).epsilon(1e-4));
  CHECK(tiny.U == doctest::Approx(10.0).epsilon(1e-4));

  // bound nondecreasing in delta
  double prev = 0.0;
  for (double d : {0.01, 0.1, 0.5, 2.0, 10.0}) {
    const double b = wasserstein_preasymptotic(kPareto2, 10.0, 1.0, d).bound;
    CHECK(b >= prev);
    prev = b;
  }
  // bound nonincreasing in x
  prev = 2.0;
  for (double x : {2.0, 5.0, 10.0, 50.0, 500.0}) {
    const double b = wasserstein_preasymptotic(kPareto2, x, 1.0, 0.5).bound;
    CHECK(b <= prev);
    prev = b;
  }
  // smaller distortion power reaches farther: larger bound for smaller s
  const double b_low = wasserstein_preasymptotic(kPareto2, 50.0, 1.1, 0.5).bound;
  const double b_high = wasserstein_preasymptotic(kPareto2, 50.0, 1.8, 0.5).bound;
  CHECK(b_low >= b_high);
}

TEST_CASE("slackness residual at the returned U") {
  for (double s : {1.0, 1.5}) {
    for (double x : {5.0, 20.0, 200.0}) {
      for (double delta : {0.05, 0.5, 3.0}) {
        const auto r = solve_U(kPareto2, x, s, delta);
        if (r.regime != WassersteinPoint::Regime::interior) continue;
        const double resid =
            transport_cost_integral(kPareto2, std::pow(r.U, 1.0 / s), x, s) - delta;
        CHECK(std::fabs(resid) <= 1e-8 * delta);
      }
    }
  }
}

TEST_CASE("near-saturation pushes the support point to the lower end") {
  // with delta just below the full transport cost, U^(1/s) approaches the
  // support lower end (numerically integrated saturation threshold)
  const double x = 6.0, s = 1.0;
  const double full_cost = transport_cost_integral(kPareto2, kPareto2.u, x, s);
  const auto r = solve_U(kPareto2, x, s, 0.999 * full_cost);
  CHECK(r.regime == WassersteinPoint::Regime::interior);
  CHECK(std::pow(r.U, 1.0 / s) - kPareto2.u < 0.05);
  const auto sat = solve_U(kPareto2, x, s, 1.001 * full_cost);
  CHECK(sat.saturated);  // p_u = 1: beyond the layer cost everything moves
}

TEST_CASE("saturation and the sub-threshold atom") {
  TailModel m{9.97, 0.05, 2.03, 7.034};
  const double s = 1.5, delta = 3.2;

  // near the threshold the whole budget saturates the bound
  const auto sat = solve_U(m, m.u * 1.01, s, delta);
  CHECK(sat.saturated);
  CHECK(sat.bound == 1.0);

  // just past the saturation edge the bound decays through p_u + moved mass
  const auto mid = solve_U(m, 10.9, s, delta);
  CHECK(mid.regime == WassersteinPoint::Regime::edge_atom);
  CHECK(mid.bound > m.p_u);
  CHECK(mid.bound < 1.0);

  // far out the interior root governs
  const auto far = solve_U(m, 100.0, s, delta);
  CHECK(far.regime == WassersteinPoint::Regime::interior);
  CHECK(far.bound >= m.survival(100.0));
  CHECK(far.bound < 1.0);

  // the bound is continuous and monotone across the three regimes
  double prev = 1.0 + 1e-12;
  for (double x = m.u * 1.005; x < 300.0; x *= 1.03) {
    const double b = solve_U(m, x, s, delta).bound;
    CHECK(b <= prev + 1e-9);
    prev = b;
  }
}

TEST_CASE("asymptotic bound") {
  CHECK(wasserstein_asymptotic(100.0, 1.5, 3.2) == doctest::Approx(0.0032).epsilon(1e-12));
  CHECK(wasserstein_asymptotic(1.0, 1.5, 3.2) == 1.0);  // clamped

  // preasymptotic dominates the reference and converges to the asymptote
  TailModel pareto_small{0.1, 1.0, 2.0, 0.05};  // survival (x/0.1)^-2 on [0.1, inf)
  const double s = 1.5, delta = 3.2;
  const double x = pareto_small.quantile_of_survival(1e-8);
  const auto pre = wasserstein_preasymptotic(pareto_small, x, s, delta);
  CHECK(pre.bound >= pareto_small.survival(x));
  CHECK(pre.bound / wasserstein_asymptotic(x, s, delta) ==
        doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("worst-case tail index does not depend on the reference index") {
  // two references, same ambiguity set: the bounds approach each other
  TailModel ref2{0.1, 1.0, 2.0, 0.05};
  TailModel ref3{0.1, 1.0, 3.0, 0.1 / 3.0};
  const double s = 1.5, delta = 1.0;
  double prev_gap = 1e9;
  for (double x : {5.0, 50.0, 500.0, 5000.0}) {
    const double b2 = wasserstein_preasymptotic(ref2, x, s, delta).bound;
    const double b3 = wasserstein_preasymptotic(ref3, x, s, delta).bound;
    const double gap = std::fabs(b2 / b3 - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.05);
}

TEST_CASE("metric properties on discrete distributions") {
  rt_test::Rng rng(31);
  for (int it = 0; it < 30; ++it) {
    auto mk = [&]() {
      std::vector<double> atoms, probs;
      double acc = 0.0, sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        acc += 0.1 + rng.uniform();
        atoms.push_back(acc);
        probs.push_back(0.1 + rng.uniform());
        sum += probs.back();
      }
      for (auto& p : probs) p /= sum;
      // exact renormalization so masses sum to one
      double s2 = 0.0;
      for (std::size_t i = 0; i + 1 < probs.size(); ++i) s2 += probs[i];
      probs.back() = 1.0 - s2;
      return DiscreteDistribution(atoms, probs);
    };
    const auto P = mk(), Q = mk(), R = mk();
    const double s = 1.0 + rng.uniform();
    const double pq = wasserstein_distance_discrete(P, Q, s);
    const double qr = wasserstein_distance_discrete(Q, R, s);
    const double pr = wasserstein_distance_discrete(P, R, s);
    CHECK(pq >= 0.0);
    CHECK(pq == doctest::Approx(wasserstein_distance_discrete(Q, P, s)).epsilon(1e-12));
    CHECK(pr <= pq + qr + 1e-12);
  }
}
