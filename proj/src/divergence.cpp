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

#include "robust_tails/divergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "robust_tails/errors.hpp"
#include "robust_tails/numerics.hpp"

namespace robust_tails {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);

double xlogx(double y) { return y == 0.0 ? 0.0 : y * std::log(y); }
}  // namespace

DivergenceSpec DivergenceSpec::hellinger(double alpha) {
  if (!(alpha > 1.0)) throw InputError("hellinger: order alpha must exceed 1");
  return {DivergenceKind::hellinger, alpha};
}

DivergenceSpec DivergenceSpec::renyi(double alpha) {
  if (!(alpha > 1.0)) throw InputError("renyi: order alpha must exceed 1");
  return {DivergenceKind::renyi, alpha};
}

DivergenceSpec DivergenceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  double a = 0.0;
  if (colon != std::string_view::npos) {
    try {
      a = std::stod(std::string(text.substr(colon + 1)));
    } catch (const std::exception&) {
      throw InputError("divergence: bad order in '" + std::string(text) + "'");
    }
  }
  if (head == "kl") return kl();
  if (head == "chi2") return chi_squared();
  if (head == "triangle") return triangle();
  if (head == "jeffrey") return jeffrey();
  if (head == "js") return jensen_shannon();
  if (head == "hellinger") {
    if (colon == std::string_view::npos)
      throw InputError("divergence: hellinger requires an order, e.g. hellinger:2.5");
    return hellinger(a);
  }
  if (head == "renyi") {
    if (colon == std::string_view::npos)
      throw InputError("divergence: renyi requires an order, e.g. renyi:2.5");
    return renyi(a);
  }
  throw InputError("divergence: unknown kind '" + std::string(text) + "'");
}

std::string DivergenceSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case DivergenceKind::kl: return "kl";
    case DivergenceKind::chi_squared: return "chi2";
    case DivergenceKind::triangle: return "triangle";
    case DivergenceKind::jeffrey: return "jeffrey";
    case DivergenceKind::jensen_shannon: return "js";
    case DivergenceKind::hellinger: os << "hellinger:" << alpha_; return os.str();
    case DivergenceKind::renyi: os << "renyi:" << alpha_; return os.str();
  }
  return "?";
}

double DivergenceSpec::f_raw(double y) const {
  if (y < 0.0) throw InputError("f_raw: argument must be nonnegative");
  switch (kind_) {
    case DivergenceKind::kl:
      return xlogx(y);
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi:
      return (std::pow(y, alpha_) - 1.0) / (alpha_ - 1.0);
    case DivergenceKind::chi_squared:
      return y * y - 1.0;
    case DivergenceKind::triangle:
      return (y - 1.0) * (y - 1.0) / (y + 1.0);
    case DivergenceKind::jeffrey:
      if (y == 0.0) return kInf;
      return (y - 1.0) * std::log(y);
    case DivergenceKind::jensen_shannon:
      return xlogx(y) - (1.0 + y) * std::log(0.5 * (1.0 + y));
  }
  return 0.0;
}

double DivergenceSpec::f_prime(double y) const {
  if (!(y > 0.0)) throw InputError("f_prime: argument must be positive");
  switch (kind_) {
    case DivergenceKind::kl:
      return std::log(y) + 1.0;
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi:
      return alpha_ * std::pow(y, alpha_ - 1.0) / (alpha_ - 1.0);
    case DivergenceKind::chi_squared:
      return 2.0 * y;
    case DivergenceKind::triangle:
      return (y - 1.0) * (y + 3.0) / ((y + 1.0) * (y + 1.0));
    case DivergenceKind::jeffrey:
      return std::log(y) + 1.0 - 1.0 / y;
    case DivergenceKind::jensen_shannon:
      return std::log(2.0 * y / (1.0 + y));
  }
  return 0.0;
}

double DivergenceSpec::f_prime_one() const {
  switch (kind_) {
    case DivergenceKind::kl: return 1.0;
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi: return alpha_ / (alpha_ - 1.0);
    case DivergenceKind::chi_squared: return 2.0;
    case DivergenceKind::triangle: return 0.0;
    case DivergenceKind::jeffrey: return 0.0;
    case DivergenceKind::jensen_shannon: return 0.0;
  }
  return 0.0;
}

double DivergenceSpec::f_tilted(double y) const {
  return f_raw(y) - f_prime_one() * (y - 1.0);
}

double DivergenceSpec::tilted_zero() const {
  switch (kind_) {
    case DivergenceKind::kl:
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi:
    case DivergenceKind::chi_squared:
    case DivergenceKind::triangle:
      return 1.0;
    case DivergenceKind::jeffrey:
      return kInf;
    case DivergenceKind::jensen_shannon:
      return kLog2;
  }
  return 0.0;
}

double DivergenceSpec::tilted_conj_zero() const {
  switch (kind_) {
    case DivergenceKind::triangle:
      return 1.0;
    case DivergenceKind::jensen_shannon:
      return kLog2;
    default:
      return kInf;
  }
}

double DivergenceSpec::divergence_cap() const {
  return tilted_zero() + tilted_conj_zero();
}

namespace {

// Smallest z >= 1 with g(z) >= t for a continuous increasing g on [1, inf)
// with g(1) = 0. Doubles the bracket, then bisects to 1e-12 relative.
template <typename G>
double increasing_inverse(G&& g, double t) {
  if (!(t > 0.0)) return 1.0;
  double hi = 2.0;
  int guard = 0;
  while (g(hi) < t) {
    hi *= 2.0;
    if (++guard > 1100) throw NumericalError("inverse_tail: bracket expansion failed");
  }
  double lo = hi * 0.5 >= 1.0 ? hi * 0.5 : 1.0;
  if (g(lo) >= t) lo = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) >= t ? hi : lo) = mid;
    if (hi - lo <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double DivergenceSpec::inverse_tail(double t) const {
  if (!(t > 0.0)) return 1.0;
  switch (kind_) {
    case DivergenceKind::chi_squared:
      return 1.0 + std::sqrt(t);
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi:
      if (alpha_ == 2.0) return 1.0 + std::sqrt(t);
      break;
    default:
      break;
  }
  return increasing_inverse([this](double y) { return f_tilted(y); }, t);
}

double DivergenceSpec::inverse_tail_raw(double t) const {
  if (!(t > 0.0)) return 1.0;
  switch (kind_) {
    case DivergenceKind::chi_squared:
      return std::sqrt(1.0 + t);
    case DivergenceKind::hellinger:
    case DivergenceKind::renyi:
      return std::pow(1.0 + t * (alpha_ - 1.0), 1.0 / alpha_);
    default:
      break;
  }
  return increasing_inverse([this](double y) { return f_raw(y); }, t);
}

DivergenceSpec DivergenceSpec::effective() const {
  if (kind_ == DivergenceKind::renyi) return hellinger(alpha_);
  return *this;
}

double renyi_to_hellinger_radius(double alpha, double delta) {
  if (!(alpha > 1.0)) throw InputError("renyi radius map: alpha must exceed 1");
  if (!(delta > 0.0)) throw InputError("renyi radius map: delta must be positive");
  return std::expm1((alpha - 1.0) * delta) / (alpha - 1.0);
}

double divergence_discrete(const DivergenceSpec& spec, std::span<const double> p,
                           std::span<const double> q, bool use_tilted) {
  if (p.size() != q.size())
    throw InputError("divergence_discrete: length mismatch");
  double sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0)
      throw InputError("divergence_discrete: negative mass");
    sp += p[i];
    sq += q[i];
  }
  if (std::fabs(sp - 1.0) > 1e-12 || std::fabs(sq - 1.0) > 1e-12)
    throw InputError("divergence_discrete: masses must sum to one");

  const DivergenceSpec eff = spec.effective();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      if (q[i] != 0.0)
        throw InputError("divergence_discrete: q is not absolutely continuous w.r.t. p");
      continue;  // 0 * f(0/0) := 0
    }
    const double r = q[i] / p[i];
    acc += p[i] * (use_tilted ? eff.f_tilted(r) : eff.f_raw(r));
  }
  if (spec.kind() == DivergenceKind::renyi) {
    // Hellinger value mapped through the defining Renyi transform.
    const double a = spec.alpha();
    return std::log1p((a - 1.0) * acc) / (a - 1.0);
  }
  return acc;
}

}  // namespace robust_tails
