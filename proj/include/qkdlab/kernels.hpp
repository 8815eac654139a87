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

// Batch Monte Carlo kernels. Every kernel takes an Exec policy; Exec::serial
// is the reference loop and Exec::openmp must return identical results.

#include "qkdlab/channel.hpp"
#include "qkdlab/ee_protocol.hpp"
#include "qkdlab/exec.hpp"
#include "qkdlab/stats.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace qkdlab {

struct ErrorRateEstimate {
  std::uint64_t errors = 0;
  std::uint64_t repetitions = 0;

  double rate() const { return static_cast<double>(errors) / static_cast<double>(repetitions); }
  double standard_error() const {
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / static_cast<double>(repetitions));
  }
};

// Equal-prior symmetric test: each repetition picks the true hypothesis by a
// fair coin, draws n_trials Bernoulli outcomes under it and applies
// decide_hypothesis.
ErrorRateEstimate empirical_error_rate(const BernoulliHypothesisPair& h, std::uint64_t n_trials,
                                       std::uint64_t repetitions, std::uint64_t seed,
                                       Exec exec = Exec::serial);

struct EpisodeConfig {
  SignalSource source = WlpSourceConfig{};
  ModeSchedule schedule = ModeSchedule::from_decoy_frequencies(0.5, 0.5);
  ChannelConfig channel;
  EveStrategy eve;
  double confidence = 0.99;
  std::uint64_t n_slots = 400;
};

struct EpisodeSummary {
  std::uint64_t episodes = 0;
  std::uint64_t detected = 0;
  std::uint64_t cleared = 0;
  std::uint64_t inconclusive = 0;
  std::vector<DetectionReport> reports;  // episode order
};

// Episode k is a full run_bb84_exchange + detect_eavesdropper with seed
// child_seed(seed, k). Episodes are the unit of parallelism.
EpisodeSummary run_detection_episodes(const EpisodeConfig& cfg, std::uint64_t n_episodes,
                                      std::uint64_t seed, Exec exec = Exec::serial);

}  // namespace qkdlab
