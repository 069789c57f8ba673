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
#include <limits>
#include <vector>

#include "robust_tails/divergence.hpp"
#include "robust_tails/errors.hpp"
#include "robust_tails/special.hpp"
#include "test_support.hpp"

using namespace robust_tails;

namespace {

std::vector<DivergenceSpec> all_specs() {
  return {DivergenceSpec::kl(),           DivergenceSpec::hellinger(2.0),
          DivergenceSpec::hellinger(2.86), DivergenceSpec::chi_squared(),
          DivergenceSpec::triangle(),      DivergenceSpec::jeffrey(),
          DivergenceSpec::jensen_shannon()};
}

}  // namespace

TEST_CASE("raw generator values") {
  for (const auto& spec : all_specs()) CHECK(spec.f_raw(1.0) == doctest::Approx(0.0));
  CHECK(DivergenceSpec::hellinger(2.0).f_raw(3.0) == doctest::Approx(8.0));
  CHECK(DivergenceSpec::triangle().f_raw(0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(DivergenceSpec::kl().f_raw(-0.1), InputError);
}

TEST_CASE("tilted generator") {
  // chi2 tilt collapses to (y-1)^2
  const auto chi2 = DivergenceSpec::chi_squared();
  for (double y : {0.0, 0.3, 1.0, 2.0, 7.5})
    CHECK(chi2.f_tilted(y) == doctest::Approx((y - 1.0) * (y - 1.0)));

  CHECK(DivergenceSpec::kl().f_tilted(0.0) == doctest::Approx(1.0));

  const auto tri = DivergenceSpec::triangle();
  for (double y : {0.0, 0.5, 1.0, 4.0})
    CHECK(tri.f_tilted(y) == doctest::Approx(tri.f_raw(y)));  // f'(1)=0 already
}

TEST_CASE("tilted generator is nonnegative, zero only at one, increasing") {
  for (const auto& spec : all_specs()) {
    double prev = 0.0;
    for (double y = 0.01; y <= 100.0; y *= 1.17) {
      const double v = spec.f_tilted(y);
      if (std::fabs(y - 1.0) > 1e-9) CHECK(v > 0.0);
      if (y >= 1.0) {
        CHECK(v >= prev);
        prev = v;
      }
    }
    CHECK(spec.f_tilted(1.0) == doctest::Approx(0.0));
  }
}

TEST_CASE("boundary values") {
  const auto tri = DivergenceSpec::triangle();
  CHECK(tri.tilted_zero() == doctest::Approx(1.0));
  CHECK(tri.tilted_conj_zero() == doctest::Approx(1.0));
  CHECK(tri.divergence_cap() == doctest::Approx(2.0));

  const auto js = DivergenceSpec::jensen_shannon();
  CHECK(js.tilted_zero() == doctest::Approx(std::log(2.0)));
  CHECK(js.tilted_conj_zero() == doctest::Approx(std::log(2.0)));
  CHECK(js.divergence_cap() == doctest::Approx(2.0 * std::log(2.0)));

  const auto kl = DivergenceSpec::kl();
  CHECK(kl.tilted_zero() == doctest::Approx(1.0));
  CHECK(std::isinf(kl.tilted_conj_zero()));

  for (const auto& spec : {DivergenceSpec::hellinger(3.0), DivergenceSpec::chi_squared(),
                           DivergenceSpec::jeffrey()})
    CHECK(std::isinf(spec.divergence_cap()));

  // the conjugate boundary value matches its defining limit f~(y)/y
  for (const auto& spec : all_specs()) {
    const double lim = spec.f_tilted(1e9) / 1e9;
    if (std::isinf(spec.tilted_conj_zero())) {
      CHECK(lim > 10.0);  // still growing (log-speed for KL/Jeffrey)
    } else {
      CHECK(lim == doctest::Approx(spec.tilted_conj_zero()).epsilon(1e-2));
    }
  }
}

TEST_CASE("generalized inverse of the tilted generator") {
  for (const auto& spec : all_specs()) CHECK(spec.inverse_tail(0.0) == 1.0);
  CHECK(DivergenceSpec::chi_squared().inverse_tail(4.0) == doctest::Approx(3.0));
  // raw-f cross-check path (closed form (1 + t(a-1))^(1/a))
  CHECK(DivergenceSpec::hellinger(2.0).inverse_tail_raw(4.0) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  // inverse_tail composed with f_tilted is the identity on [1, inf)
  for (const auto& spec : all_specs()) {
    for (double y : {1.0, 1.5, 3.0, 10.0, 250.0, 1e4}) {
      const double t = spec.f_tilted(y);
      CHECK(spec.inverse_tail(t) == doctest::Approx(y).epsilon(1e-9));
    }
  }
}

TEST_CASE("regular variation of the tilted generator") {
  // clean polynomial cases: Hellinger index alpha, chi2 index 2
  const double y = 1e6;
  for (double t : {2.0, 5.0}) {
    const auto h = DivergenceSpec::hellinger(2.86);
    CHECK(h.f_tilted(t * y) / h.f_tilted(y) ==
          doctest::Approx(std::pow(t, 2.86)).epsilon(0.01));
    const auto c = DivergenceSpec::chi_squared();
    CHECK(c.f_tilted(t * y) / c.f_tilted(y) ==
          doctest::Approx(t * t).epsilon(0.01));
  }
}

TEST_CASE("lambert w") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lambert_w(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-12));
  for (double t = 1e-6; t <= 1e12; t *= 10.0) {
    const double w = lambert_w(t);
    CHECK(w * std::exp(w) == doctest::Approx(t).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lambert_w(-1.0), InputError);
}

TEST_CASE("renyi radius map") {
  CHECK(renyi_to_hellinger_radius(2.0, std::log(2.0)) == doctest::Approx(1.0));
  // first order: mapped radius ~ delta as delta -> 0
  CHECK(renyi_to_hellinger_radius(3.0, 1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS_AS(renyi_to_hellinger_radius(1.0, 0.5), InputError);
}

TEST_CASE("discrete divergence examples") {
  const std::vector<double> p = {0.5, 0.5};
  CHECK(divergence_discrete(DivergenceSpec::kl(), p, p) == doctest::Approx(0.0));

  const std::vector<double> q = {0.75, 0.25};
  const double expected = 0.75 * std::log(1.5) + 0.25 * std::log(0.5);
  CHECK(divergence_discrete(DivergenceSpec::kl(), p, q) ==
        doctest::Approx(expected).epsilon(1e-12));

  const std::vector<double> q2 = {1.0, 0.0};
  CHECK(divergence_discrete(DivergenceSpec::chi_squared(), p, q2) ==
        doctest::Approx(1.0));

  // absolute-continuity violation
  const std::vector<double> p0 = {1.0, 0.0};
  const std::vector<double> q0 = {0.5, 0.5};
  CHECK_THROWS_AS(divergence_discrete(DivergenceSpec::kl(), p0, q0), InputError);
}

TEST_CASE("tilt invariance of the discrete divergence") {
  rt_test::Rng rng(77);
  for (const auto& spec : all_specs()) {
    for (int it = 0; it < 100; ++it) {
      std::vector<double> p(4), q(4);
      double sp = 0, sq = 0;
      for (int i = 0; i < 4; ++i) {
        p[i] = 0.05 + rng.uniform();
        q[i] = 0.05 + rng.uniform();
        sp += p[i];
        sq += q[i];
      }
      for (int i = 0; i < 4; ++i) {
        p[i] /= sp;
        q[i] /= sq;
      }
      const double raw = divergence_discrete(spec, p, q, false);
      const double tilted = divergence_discrete(spec, p, q, true);
      CHECK(std::fabs(raw - tilted) <= 1e-12);
    }
  }
}

TEST_CASE("self-conjugate divergences are symmetric") {
  rt_test::Rng rng(78);
  for (const auto& spec : {DivergenceSpec::triangle(), DivergenceSpec::jensen_shannon()}) {
    for (int it = 0; it < 50; ++it) {
      std::vector<double> p(3), q(3);
      double sp = 0, sq = 0;
      for (int i = 0; i < 3; ++i) {
        p[i] = 0.05 + rng.uniform();
        q[i] = 0.05 + rng.uniform();
        sp += p[i];
        sq += q[i];
      }
      for (int i = 0; i < 3; ++i) {
        p[i] /= sp;
        q[i] /= sq;
      }
      CHECK(divergence_discrete(spec, p, q) ==
            doctest::Approx(divergence_discrete(spec, q, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("renyi discrete value passes through the log transform") {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {0.75, 0.25};
  const double h = divergence_discrete(DivergenceSpec::hellinger(2.0), p, q);
  const double r = divergence_discrete(DivergenceSpec::renyi(2.0), p, q);
  CHECK(r == doctest::Approx(std::log1p(h)).epsilon(1e-14));
}

TEST_CASE("divergence spec parsing") {
  CHECK(DivergenceSpec::parse("kl").kind() == DivergenceKind::kl);
  CHECK(DivergenceSpec::parse("chi2").kind() == DivergenceKind::chi_squared);
  CHECK(DivergenceSpec::parse("hellinger:2.86").alpha() == doctest::Approx(2.86));
  CHECK(DivergenceSpec::parse("renyi:2.5").needs_radius_map());
  CHECK(DivergenceSpec::parse("js").name() == "js");
  CHECK_THROWS_AS(DivergenceSpec::parse("hellinger"), InputError);
  CHECK_THROWS_AS(DivergenceSpec::parse("hellinger:0.5"), InputError);
  CHECK_THROWS_AS(DivergenceSpec::parse("tv"), InputError);
}
