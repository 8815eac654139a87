/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's formulas; each oracle takes a different route to the
// same quantity.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace qkdlab::oracle {

// -ln min_{s in (0,1)} [p^s q^(1-s) + (1-p)^s (1-q)^(1-s)] by golden-section
// search. The objective is convex in s, so the bracket always holds the
// minimum. Interior points only, which gives the right limit for supports
// with a zero-probability outcome (0^s = 0 for s > 0).
inline double chernoff_by_minimization(double p, double q) {
  auto f = [&](double s) {
    return std::pow(p, s) * std::pow(q, 1.0 - s) +
           std::pow(1.0 - p, s) * std::pow(1.0 - q, 1.0 - s);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  return -std::log(std::min(fa, fb));
}

inline std::uint64_t trials_from_oracle(double p, double q, double max_error) {
  return static_cast<std::uint64_t>(
      std::ceil(-std::log(2.0 * max_error) / chernoff_by_minimization(p, q)));
}

inline double binomial_pmf(std::uint64_t k, std::uint64_t n, double p) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  return std::exp(std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1) +
                  kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

// True when the null pmf is at least the alternative pmf (ties to null).
inline bool null_is_likelier(std::uint64_t k, std::uint64_t n, double p, double q) {
  return binomial_pmf(k, n, p) >= binomial_pmf(k, n, q);
}

inline double poisson_pmf(double mu, unsigned n) {
  return std::pow(mu, n) * std::exp(-mu) / std::tgamma(n + 1.0);
}

// Three binomial standard errors around an expected probability.
inline double three_sigma(double prob, double samples) {
  return 3.0 * std::sqrt(prob * (1.0 - prob) / samples);
}

// Straightforward sequential re-simulation of the PNS attack on a WLP stream
// using the standard library's engines. Returns the fraction of forwarded
// nonvacuum pulses that Eve split and the forwarded count.
struct PnsResimulation {
  double split_fraction = 0.0;
  std::uint64_t forwarded = 0;
  std::uint64_t nonvacuum = 0;
};

inline PnsResimulation resimulate_pns(double mu, double loss, std::uint64_t pulses,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::poisson_distribution<unsigned> photons(mu);
  std::vector<unsigned> counts(pulses);
  std::uint64_t singles = 0, multis = 0;
  for (auto& c : counts) {
    c = photons(rng);
    singles += c == 1;
    multis += c >= 2;
  }
  const double budget = (1.0 - loss) * static_cast<double>(singles + multis);
  std::bernoulli_distribution pass_single(
      static_cast<double>(multis) <= budget && singles > 0
          ? (budget - static_cast<double>(multis)) / static_cast<double>(singles)
          : 0.0);
  std::bernoulli_distribution pass_multi(
      static_cast<double>(multis) <= budget ? 1.0 : budget / static_cast<double>(multis));
  PnsResimulation r;
  r.nonvacuum = singles + multis;
  std::uint64_t split = 0;
  for (const unsigned c : counts) {
    if (c == 1 && pass_single(rng)) {
      ++r.forwarded;
    } else if (c >= 2 && pass_multi(rng)) {
      ++r.forwarded;
      ++split;
    }
  }
  r.split_fraction = static_cast<double>(split) / static_cast<double>(r.forwarded);
  return r;
}

// Expected class-1 share among pulses forwarded by a class-blind PNS attack
// on a two-intensity source, computed from the per-class Poisson rates.
inline double decoy_attack_share(double mu1, double mu2, double f1, double f2, double loss) {
  const double s1 = f1 * mu1 * std::exp(-mu1);
  const double s2 = f2 * mu2 * std::exp(-mu2);
  const double m1 = f1 * (1.0 - std::exp(-mu1) * (1.0 + mu1));
  const double m2 = f2 * (1.0 - std::exp(-mu2) * (1.0 + mu2));
  const double budget = (1.0 - loss) * (s1 + s2 + m1 + m2);
  if (m1 + m2 > budget) {
    return m1 / (m1 + m2);
  }
  const double pass = (budget - m1 - m2) / (s1 + s2);
  return (m1 + pass * s1) / (m1 + m2 + pass * (s1 + s2));
}

}  // namespace qkdlab::oracle
