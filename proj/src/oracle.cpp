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

#include "robust_tails/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "robust_tails/errors.hpp"

namespace robust_tails {

DiscreteDistribution::DiscreteDistribution(std::vector<double> atoms_,
                                           std::vector<double> probs_)
    : atoms(std::move(atoms_)), probs(std::move(probs_)) {
  if (atoms.size() != probs.size() || atoms.empty())
    throw InputError("DiscreteDistribution: atoms/probs size mismatch");
  double sum = 0.0, comp = 0.0;  // Kahan
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0 && !(atoms[i] > atoms[i - 1]))
      throw InputError("DiscreteDistribution: atoms must be strictly ascending");
    if (probs[i] < 0.0) throw InputError("DiscreteDistribution: negative mass");
    const double y = probs[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw InputError("DiscreteDistribution: masses must sum to one");
}

double DiscreteDistribution::mass_above(double x) const {
  double m = 0.0;
  for (std::size_t i = atoms.size(); i-- > 0 && atoms[i] > x;) m += probs[i];
  return m;
}

double DiscreteDistribution::mass_at_least(double x) const {
  double m = 0.0;
  for (std::size_t i = atoms.size(); i-- > 0 && atoms[i] >= x;) m += probs[i];
  return m;
}

DiscreteDistribution DiscreteDistribution::quantile_discretization(
    const TailModel& model, std::size_t n_atoms) {
  model.validate();
  if (n_atoms < 1) throw InputError("quantile_discretization: need atoms");
  std::vector<double> atoms, probs;
  atoms.reserve(n_atoms + 1);
  probs.reserve(n_atoms + 1);
  if (model.p_u < 1.0) {
    atoms.push_back(model.u);
    probs.push_back(1.0 - model.p_u);
  }
  const double w = model.p_u / static_cast<double>(n_atoms);
  for (std::size_t i = 0; i < n_atoms; ++i) {
    const double p = model.p_u * (1.0 - (static_cast<double>(i) + 0.5) /
                                            static_cast<double>(n_atoms));
    atoms.push_back(model.quantile_of_survival(p));
    probs.push_back(w);
  }
  return DiscreteDistribution(std::move(atoms), std::move(probs));
}

double fdiv_worstcase_scan(const DiscreteDistribution& ref, double x,
                           const DivergenceSpec& spec_in, double delta,
                           std::size_t grid_size) {
  if (grid_size < 10) throw InputError("fdiv_worstcase_scan: grid too coarse");
  const double p = ref.mass_above(x);
  if (!(p > 0.0 && p < 1.0))
    throw InputError("fdiv_worstcase_scan: reference mass above x must be in (0,1)");

  DivergenceSpec spec = spec_in;
  if (spec.needs_radius_map()) {
    delta = renyi_to_hellinger_radius(spec.alpha(), delta);
    spec = spec.effective();
  }
  if (delta <= 0.0) return p;
  if (delta >= spec.divergence_cap()) return 1.0;

  const double pp[2] = {1.0 - p, p};
  auto feasible = [&](double m) {
    const double qq[2] = {1.0 - m, m};
    return divergence_discrete(spec, pp, qq) <= delta;
  };

  // scan m over [p, 1]
  double last_ok = p;
  double first_bad = -1.0;
  for (std::size_t i = 0; i <= grid_size; ++i) {
    const double m =
        p + (1.0 - p) * static_cast<double>(i) / static_cast<double>(grid_size);
    if (feasible(m)) {
      last_ok = m;
    } else {
      first_bad = m;
      break;
    }
  }
  if (first_bad < 0.0) return 1.0;  // every grid point feasible

  // one local bisection between the frontier grid points
  double lo = last_ok, hi = first_bad;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

namespace {

struct GreedyMoves {
  double mass_final;                 // mass at or above x after transport
  std::vector<double> moved_from_i;  // per-atom moved mass
};

GreedyMoves greedy_plan(const DiscreteDistribution& ref, double x, double s,
                        double delta) {
  if (!(s >= 1.0)) throw InputError("wasserstein greedy: s must be >= 1");
  if (delta < 0.0) throw InputError("wasserstein greedy: delta must be >= 0");
  const double xs = std::pow(x, s);
  GreedyMoves out;
  out.moved_from_i.assign(ref.atoms.size(), 0.0);
  out.mass_final = ref.mass_at_least(x);
  double budget = delta;
  for (std::size_t i = ref.atoms.size(); i-- > 0;) {
    if (ref.atoms[i] >= x) continue;  // already counted
    const double unit_cost = xs - std::pow(ref.atoms[i], s);
    if (unit_cost <= 0.0) {  // x^s rounding guard; cost-free move
      out.moved_from_i[i] = ref.probs[i];
      out.mass_final += ref.probs[i];
      continue;
    }
    const double affordable = budget / unit_cost;
    const double moved = std::min(ref.probs[i], affordable);
    out.moved_from_i[i] = moved;
    out.mass_final += moved;
    budget -= moved * unit_cost;
    if (budget <= 0.0) break;
  }
  return out;
}

}  // namespace

double wasserstein_worstcase_greedy(const DiscreteDistribution& ref, double x,
                                    double s, double delta) {
  return greedy_plan(ref, x, s, delta).mass_final;
}

DiscreteDistribution wasserstein_greedy_transported(const DiscreteDistribution& ref,
                                                    double x, double s,
                                                    double delta) {
  const GreedyMoves plan = greedy_plan(ref, x, s, delta);
  std::vector<double> atoms, probs;
  double at_x = 0.0;
  bool x_is_atom = false;
  for (std::size_t i = 0; i < ref.atoms.size(); ++i) {
    const double stay = ref.probs[i] - plan.moved_from_i[i];
    at_x += plan.moved_from_i[i];
    if (ref.atoms[i] == x) {
      at_x += stay;
      x_is_atom = true;
      continue;
    }
    if (stay > 0.0 || plan.moved_from_i[i] == 0.0) {
      atoms.push_back(ref.atoms[i]);
      probs.push_back(stay);
    }
  }
  if (at_x > 0.0 || x_is_atom) {
    const auto pos = std::lower_bound(atoms.begin(), atoms.end(), x);
    probs.insert(probs.begin() + (pos - atoms.begin()), at_x);
    atoms.insert(pos, x);
  }
  return DiscreteDistribution(std::move(atoms), std::move(probs));
}

double wasserstein_distance_discrete(const DiscreteDistribution& p,
                                     const DiscreteDistribution& q, double s) {
  if (!(s >= 1.0)) throw InputError("wasserstein_distance_discrete: s must be >= 1");
  std::vector<double> pts;
  pts.reserve(p.atoms.size() + q.atoms.size());
  pts.insert(pts.end(), p.atoms.begin(), p.atoms.end());
  pts.insert(pts.end(), q.atoms.begin(), q.atoms.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  double dist = 0.0;
  double Fp = 0.0, Fq = 0.0;
  std::size_t ip = 0, iq = 0;
  for (std::size_t j = 0; j + 1 <= pts.size(); ++j) {
    while (ip < p.atoms.size() && p.atoms[ip] <= pts[j]) Fp += p.probs[ip++];
    while (iq < q.atoms.size() && q.atoms[iq] <= pts[j]) Fq += q.probs[iq++];
    if (j + 1 == pts.size()) break;
    dist += std::fabs(Fp - Fq) *
            (std::pow(pts[j + 1], s) - std::pow(pts[j], s));
  }
  return dist;
}

}  // namespace robust_tails
