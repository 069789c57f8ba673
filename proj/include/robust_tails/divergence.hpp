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

#include <span>
#include <string>
#include <string_view>

namespace robust_tails {

enum class DivergenceKind {
  kl,              // f(y) = y log y
  hellinger,       // f(y) = (y^a - 1)/(a - 1), order a > 1
  chi_squared,     // f(y) = y^2 - 1  (Hellinger of order 2)
  triangle,        // f(y) = (y-1)^2 / (y+1)
  jeffrey,         // f(y) = (y-1) log y
  jensen_shannon,  // f(y) = y log y - (1+y) log((1+y)/2)
  renyi,           // handled as Hellinger(a) after a radius transform
};

/**
 * One member of the f-divergence family: the raw convex generator f, the
 * tilted generator f~(y) = f(y) - f'(1)(y-1) with f~'(1) = 0, boundary
 * values f~(0) and f~*(0) = lim f~(y)/y, and generalized inverses on
 * [1, inf). All members are immutable value types; every method is pure.
 *
 * The divergence value itself is tilt-invariant; all boundary and
 * asymptotic computations in this library use the tilted form.
 */
class DivergenceSpec {
 public:
  DivergenceSpec() = default;  // KL

  static DivergenceSpec kl() { return {DivergenceKind::kl, 0.0}; }
  static DivergenceSpec hellinger(double alpha);
  static DivergenceSpec chi_squared() { return {DivergenceKind::chi_squared, 0.0}; }
  static DivergenceSpec triangle() { return {DivergenceKind::triangle, 0.0}; }
  static DivergenceSpec jeffrey() { return {DivergenceKind::jeffrey, 0.0}; }
  static DivergenceSpec jensen_shannon() { return {DivergenceKind::jensen_shannon, 0.0}; }
  static DivergenceSpec renyi(double alpha);

  /// Parses CLI tokens: kl, hellinger:a, chi2, triangle, jeffrey, js, renyi:a.
  static DivergenceSpec parse(std::string_view text);

  DivergenceKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string name() const;

  /// Raw generator f; defined at y = 0 by its limit. Throws for y < 0.
  double f_raw(double y) const;

  /// Derivative f'(y) for y > 0.
  double f_prime(double y) const;

  double f_prime_one() const;

  /// Tilted generator f~(y) = f(y) - f'(1)(y-1), y >= 0.
  double f_tilted(double y) const;

  double f_tilted_prime(double y) const { return f_prime(y) - f_prime_one(); }

  /// f~(0); +inf for Jeffrey.
  double tilted_zero() const;

  /// f~*(0) = lim_{y->inf} f~(y)/y; +inf unless Triangle or Jensen-Shannon.
  double tilted_conj_zero() const;

  /// f~(0) + f~*(0): the attainable divergence cap (property 5).
  double divergence_cap() const;

  /// Generalized inverse of f~ on [1, inf): smallest z >= 1 with f~(z) >= t.
  /// Closed form for the quadratic cases, bracketed bisection otherwise.
  double inverse_tail(double t) const;

  /// Inverse of the raw f on [1, inf) (cross-check path for the closed-form
  /// Hellinger inverse (1 + t(a-1))^(1/a)).
  double inverse_tail_raw(double t) const;

  /// Renyi ambiguity sets are solved as Hellinger sets with a mapped radius.
  bool needs_radius_map() const { return kind_ == DivergenceKind::renyi; }
  DivergenceSpec effective() const;

 private:
  DivergenceSpec(DivergenceKind k, double a) : kind_(k), alpha_(a) {}

  DivergenceKind kind_ = DivergenceKind::kl;
  double alpha_ = 0.0;
};

/// Radius map: a Renyi ball of radius delta equals a Hellinger(alpha) ball
/// of radius (exp((alpha-1) delta) - 1)/(alpha - 1).
double renyi_to_hellinger_radius(double alpha, double delta);

/**
 * Discrete f-divergence sum_i p_i f(q_i/p_i) with the 0*f(0/0) := 0
 * convention; p is the base (reference) measure and q must be absolutely
 * continuous with respect to it. With use_tilted the tilted generator is
 * used instead; the value is identical (property 7). For a Renyi spec the
 * Hellinger sum is passed through the defining log transform.
 */
double divergence_discrete(const DivergenceSpec& spec, std::span<const double> p,
                           std::span<const double> q, bool use_tilted = false);

}  // namespace robust_tails
