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

#include <cstdint>
#include <optional>

namespace qkdlab {

// Two Bernoulli hypotheses for a single trial: "success" (a bright-port
// click, a class-1 pulse, ...) has probability p under the null hypothesis
// and q under the alternative.
class BernoulliHypothesisPair {
 public:
  // Throws DomainError unless both probabilities lie in [0, 1].
  BernoulliHypothesisPair(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double p_bar() const noexcept { return 1.0 - p_; }
  double q_bar() const noexcept { return 1.0 - q_; }

 private:
  double p_;
  double q_;
};

enum class Hypothesis { Null, Alternative };

// Chernoff distance C(p, q) in nats. Symmetric, zero iff p == q.
// Supports with a zero-probability outcome use the analytic limit
// (C = -ln q for p = 1, and so on).
// Throws PerfectlyDistinguishableError when both hypotheses are deterministic
// and different.
double chernoff_distance(const BernoulliHypothesisPair& h);

// The type xi at which the two likelihoods balance,
//   xi = ln(q_bar / p_bar) / (ln(p / p_bar) + ln(q_bar / q)).
// Requires p != q; lies strictly between p and q for interior pairs and takes
// its limiting value (0 or 1) when a support is degenerate.
double xi_threshold(const BernoulliHypothesisPair& h);

// Upper bound (1/2) e^{-n C} on the equal-prior error after n trials.
double max_error_probability(std::uint64_t n, const BernoulliHypothesisPair& h);

// Smallest n >= 1 with (1/2) e^{-n C} <= max_error.
// Throws DomainError unless 0 < max_error < 0.5 and UnreachableError when C = 0.
// Perfectly distinguishable pairs need exactly one trial.
std::uint64_t trials_needed(const BernoulliHypothesisPair& h, double max_error);

// Maximum-likelihood choice between the hypotheses given `successes` out of
// `trials`. Exact likelihood ties go to Null.
Hypothesis decide_hypothesis(std::uint64_t successes, std::uint64_t trials,
                             const BernoulliHypothesisPair& h);

struct DetectionPlan {
  double chernoff_distance = 0.0;
  double xi = 0.0;
  std::optional<std::uint64_t> trials_needed;  // empty: unreachable (C = 0)
  double max_error = 0.5;                      // bound achieved at trials_needed
};

DetectionPlan plan_detection(const BernoulliHypothesisPair& h, double max_error);

}  // namespace qkdlab
