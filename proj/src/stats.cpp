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

#include "qkdlab/stats.hpp"

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qkdlab {
namespace {

bool is_deterministic(double x) { return x == 0.0 || x == 1.0; }

// k * ln(prob) with 0 * ln(0) = 0.
double log_term(std::uint64_t k, double prob) {
  if (k == 0) {
    return 0.0;
  }
  if (prob == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(k) * std::log(prob);
}

}  // namespace

BernoulliHypothesisPair::BernoulliHypothesisPair(double p, double q) : p_(p), q_(q) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(fmt::format("null probability p = {} outside [0, 1]", p));
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError(fmt::format("alternative probability q = {} outside [0, 1]", q));
  }
}

double xi_threshold(const BernoulliHypothesisPair& h) {
  const double p = h.p();
  const double q = h.q();
  if (p == q) {
    throw DomainError("xi is undefined for identical hypotheses");
  }
  if (p == 1.0 || q == 1.0) {
    return 1.0;
  }
  if (p == 0.0 || q == 0.0) {
    return 0.0;
  }
  // ln(q_bar/p_bar) / ln(p q_bar / (p_bar q)); both logs written around p - q
  // so nearly equal hypotheses do not cancel.
  const double delta = p - q;
  const double num = std::log1p(delta / h.p_bar());
  const double den = std::log1p(delta / (h.p_bar() * q));
  return num / den;
}

double chernoff_distance(const BernoulliHypothesisPair& h) {
  const double p = h.p();
  const double q = h.q();
  if (p == q) {
    return 0.0;
  }
  if (is_deterministic(p) && is_deterministic(q)) {
    throw PerfectlyDistinguishableError(
        fmt::format("p = {} and q = {} are perfectly distinguishable in one trial", p, q));
  }
  if (p == 1.0) return -std::log(q);
  if (p == 0.0) return -std::log(h.q_bar());
  if (q == 1.0) return -std::log(p);
  if (q == 0.0) return -std::log(h.p_bar());

  const double xi = xi_threshold(h);
  const double xi_bar = 1.0 - xi;
  const double c =
      xi * std::log1p((xi - p) / p) + xi_bar * std::log1p((p - xi) / h.p_bar());
  return std::max(c, 0.0);
}

double max_error_probability(std::uint64_t n, const BernoulliHypothesisPair& h) {
  const double c = chernoff_distance(h);
  return 0.5 * std::exp(-static_cast<double>(n) * c);
}

std::uint64_t trials_needed(const BernoulliHypothesisPair& h, double max_error) {
  if (!(max_error > 0.0 && max_error < 0.5)) {
    throw DomainError(fmt::format("max_error = {} outside (0, 0.5)", max_error));
  }
  double c = 0.0;
  try {
    c = chernoff_distance(h);
  } catch (const PerfectlyDistinguishableError&) {
    return 1;
  }
  if (c <= 0.0) {
    throw UnreachableError(
        fmt::format("indistinguishable hypotheses (p = {}, q = {}): zero Chernoff distance",
                    h.p(), h.q()));
  }
  const double n = std::ceil(-std::log(2.0 * max_error) / c);
  if (!(n < 0x1.0p63)) {
    throw UnreachableError(fmt::format("trials needed ({}) exceeds any feasible run", n));
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

Hypothesis decide_hypothesis(std::uint64_t successes, std::uint64_t trials,
                             const BernoulliHypothesisPair& h) {
  if (h.p() == h.q()) {
    throw DomainError("cannot decide between identical hypotheses");
  }
  if (trials == 0) {
    throw DomainError("decision needs at least one trial");
  }
  if (successes > trials) {
    throw DomainError(fmt::format("{} successes out of {} trials", successes, trials));
  }
  const std::uint64_t failures = trials - successes;
  const double ll_null = log_term(successes, h.p()) + log_term(failures, h.p_bar());
  const double ll_alt = log_term(successes, h.q()) + log_term(failures, h.q_bar());

  if (std::isinf(ll_null) && std::isinf(ll_alt)) {
    return Hypothesis::Null;  // impossible under both
  }
  // Mathematically equal likelihoods can differ in the last few ulps.
  const double tol = 1e-12 * std::max({1.0, std::abs(ll_null), std::abs(ll_alt)});
  return ll_null + tol >= ll_alt ? Hypothesis::Null : Hypothesis::Alternative;
}

DetectionPlan plan_detection(const BernoulliHypothesisPair& h, double max_error) {
  DetectionPlan plan;
  plan.chernoff_distance = chernoff_distance(h);
  plan.xi = h.p() == h.q() ? h.p() : xi_threshold(h);
  try {
    plan.trials_needed = trials_needed(h, max_error);
    plan.max_error = max_error_probability(*plan.trials_needed, h);
  } catch (const UnreachableError&) {
    plan.trials_needed.reset();
    plan.max_error = 0.5;
  }
  return plan;
}

}  // namespace qkdlab
