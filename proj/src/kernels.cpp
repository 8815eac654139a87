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

#include "qkdlab/kernels.hpp"

#include "qkdlab/errors.hpp"
#include "qkdlab/random.hpp"

namespace qkdlab {

ErrorRateEstimate empirical_error_rate(const BernoulliHypothesisPair& h, std::uint64_t n_trials,
                                       std::uint64_t repetitions, std::uint64_t seed, Exec exec) {
  if (h.p() == h.q()) {
    throw DomainError("cannot decide between identical hypotheses");
  }
  if (n_trials == 0) {
    throw DomainError("need at least one trial per repetition");
  }
  const StreamFamily family(seed, Substream::analysis);
  ErrorRateEstimate estimate;
  estimate.repetitions = repetitions;
  estimate.errors = parallel_count(exec, repetitions, [&](std::size_t i) {
    RandomStream rng = family.at(i);
    const Hypothesis truth = rng.below(2) == 0 ? Hypothesis::Null : Hypothesis::Alternative;
    const double prob = truth == Hypothesis::Null ? h.p() : h.q();
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
      successes += rng.bernoulli(prob);
    }
    return decide_hypothesis(successes, n_trials, h) != truth;
  });
  return estimate;
}

EpisodeSummary run_detection_episodes(const EpisodeConfig& cfg, std::uint64_t n_episodes,
                                      std::uint64_t seed, Exec exec) {
  // Surface configuration errors here; exceptions must not escape the
  // parallel region.
  cfg.channel.validate();
  cfg.eve.validate();
  (void)detect_eavesdropper({}, cfg.channel, cfg.confidence);

  EpisodeSummary summary;
  summary.episodes = n_episodes;
  summary.reports.resize(n_episodes);
  parallel_for(exec, n_episodes, [&](std::size_t k) {
    const ExchangeResult run = run_bb84_exchange(cfg.n_slots, cfg.source, cfg.schedule,
                                                  cfg.channel, cfg.eve, child_seed(seed, k));
    summary.reports[k] = detect_eavesdropper(run.evidence, cfg.channel, cfg.confidence);
  });
  for (const DetectionReport& report : summary.reports) {
    switch (report.decision) {
      case Decision::EavesdropperDetected: ++summary.detected; break;
      case Decision::NoEavesdropper: ++summary.cleared; break;
      case Decision::Inconclusive: ++summary.inconclusive; break;
    }
  }
  return summary;
}

}  // namespace qkdlab
