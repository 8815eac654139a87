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

#include "qkdlab/sources.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qkdlab {

struct DecoyScenario {
  DecoyIntensityConfig intensities = DecoyIntensityConfig::defaults();
  double loss = 0.5;
  double confidence = 0.99;

  // Throws DomainError unless 0 <= loss < 1 and 0.5 < confidence < 1.
  void validate() const;
};

// Conversion from detected middle-bin trials to pulses Alice generates:
// pulses = trials / ((1 - loss) * middle_probability * launch_probability).
struct EeAccounting {
  double middle_probability = 0.5;
  double launch_probability = 0.5;
};

// Share of all pulses Alice emits that are nonvacuum.
double nonvacuum_fraction(const DecoyIntensityConfig& cfg);

// Class-1 share among nonvacuum pulses; what Bob sees when loss is honest
// (whole-pulse loss does not change class shares).
double null_received_fraction(const DecoyIntensityConfig& cfg);

// Expected class-1 share among pulses Eve forwards when she counterfeits
// `loss` with a class-blind PNS attack: all multi-photon pulses pass, the
// remaining budget (1 - loss) * (nonvacuum rate) is filled with singles in
// proportion to their per-class rates; if the multis alone exceed the
// budget they are thinned proportionally and no single passes.
// Throws DegenerateError when the forward budget is zero.
double attack_fraction_oracle(const DecoyIntensityConfig& cfg, double loss);

// Received pulses Alice and Bob must compare to tell the null share from the
// attacked share at the scenario's confidence.
std::uint64_t decoy_trials_needed(const DecoyScenario& scn);

// decoy_trials_needed converted to pulses sent, rounded up.
// Throws UnreachableError when the attack does not shift the shares.
std::uint64_t decoy_pulses_needed(const DecoyScenario& scn);

std::uint64_t ee_pulses_needed(double dephasing, double loss, double confidence,
                               const EeAccounting& accounting = {});

struct DecoyComparisonPoint {
  double loss = 0.0;
  std::uint64_t pulses_sent_decoy = 0;
  std::vector<std::uint64_t> pulses_sent_ee;  // one per dephasing level
  std::vector<double> ratio;                  // EE pulses / decoy pulses
};

// Decoy and EE pulses-sent series over a loss grid; the template supplies
// intensities and confidence, its loss is ignored.
std::vector<DecoyComparisonPoint> comparison_curve(std::span<const double> loss_grid,
                                                   std::span<const double> ee_dephasing_levels,
                                                   const DecoyScenario& scenario_template,
                                                   const EeAccounting& accounting = {});

}  // namespace qkdlab
