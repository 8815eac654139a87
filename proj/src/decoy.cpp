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

#include "qkdlab/decoy.hpp"

#include "qkdlab/errors.hpp"
#include "qkdlab/stats.hpp"

#include <fmt/format.h>

#include <cmath>

namespace qkdlab {
namespace {

struct ClassRates {
  double single1, single2, multi1, multi2;

  double nonvacuum() const { return single1 + single2 + multi1 + multi2; }
};

ClassRates class_rates(const DecoyIntensityConfig& cfg) {
  return {cfg.fraction1() * poisson_pmf(cfg.mu1(), 1), cfg.fraction2() * poisson_pmf(cfg.mu2(), 1),
          cfg.fraction1() * multi_photon_probability(cfg.mu1()),
          cfg.fraction2() * multi_photon_probability(cfg.mu2())};
}

std::uint64_t pulses_from_trials(std::uint64_t trials, double receive_probability) {
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(trials) / receive_probability));
}

}  // namespace

void DecoyScenario::validate() const {
  if (!(loss >= 0.0 && loss < 1.0)) {
    throw DomainError(fmt::format("loss = {} outside [0, 1)", loss));
  }
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw DomainError(fmt::format("confidence = {} outside (0.5, 1)", confidence));
  }
}

double nonvacuum_fraction(const DecoyIntensityConfig& cfg) {
  return cfg.fraction1() * nonvacuum_probability(cfg.mu1()) +
         cfg.fraction2() * nonvacuum_probability(cfg.mu2());
}

double null_received_fraction(const DecoyIntensityConfig& cfg) {
  const double total = nonvacuum_fraction(cfg);
  if (total <= 0.0) {
    throw DegenerateError("source emits only vacuum");
  }
  return cfg.fraction1() * nonvacuum_probability(cfg.mu1()) / total;
}

double attack_fraction_oracle(const DecoyIntensityConfig& cfg, double loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw DomainError(fmt::format("loss = {} outside [0, 1]", loss));
  }
  const ClassRates r = class_rates(cfg);
  const double budget = (1.0 - loss) * r.nonvacuum();
  if (budget <= 0.0) {
    throw DegenerateError("Eve forwards nothing: zero forward budget");
  }
  const double multis = r.multi1 + r.multi2;
  if (multis > budget) {
    return r.multi1 / multis;
  }
  const double singles = r.single1 + r.single2;
  const double single_pass = singles > 0.0 ? (budget - multis) / singles : 0.0;
  return (r.multi1 + r.single1 * single_pass) / budget;
}

std::uint64_t decoy_trials_needed(const DecoyScenario& scn) {
  scn.validate();
  const BernoulliHypothesisPair h(null_received_fraction(scn.intensities),
                                  attack_fraction_oracle(scn.intensities, scn.loss));
  return trials_needed(h, 1.0 - scn.confidence);
}

std::uint64_t decoy_pulses_needed(const DecoyScenario& scn) {
  const std::uint64_t trials = decoy_trials_needed(scn);
  return pulses_from_trials(trials, (1.0 - scn.loss) * nonvacuum_fraction(scn.intensities));
}

std::uint64_t ee_pulses_needed(double dephasing, double loss, double confidence,
                               const EeAccounting& accounting) {
  if (!(dephasing >= 0.0 && dephasing < 0.5)) {
    throw DomainError(fmt::format("dephasing d = {} outside [0, 0.5)", dephasing));
  }
  if (!(loss >= 0.0 && loss < 1.0)) {
    throw DomainError(fmt::format("loss = {} outside [0, 1)", loss));
  }
  const std::uint64_t trials =
      trials_needed(BernoulliHypothesisPair(1.0 - dephasing, 0.5), 1.0 - confidence);
  return pulses_from_trials(
      trials, (1.0 - loss) * accounting.middle_probability * accounting.launch_probability);
}

std::vector<DecoyComparisonPoint> comparison_curve(std::span<const double> loss_grid,
                                                   std::span<const double> ee_dephasing_levels,
                                                   const DecoyScenario& scenario_template,
                                                   const EeAccounting& accounting) {
  std::vector<DecoyComparisonPoint> points;
  points.reserve(loss_grid.size());
  for (const double loss : loss_grid) {
    DecoyScenario scn = scenario_template;
    scn.loss = loss;
    DecoyComparisonPoint point;
    point.loss = loss;
    point.pulses_sent_decoy = decoy_pulses_needed(scn);
    for (const double d : ee_dephasing_levels) {
      const std::uint64_t ee = ee_pulses_needed(d, loss, scn.confidence, accounting);
      point.pulses_sent_ee.push_back(ee);
      point.ratio.push_back(static_cast<double>(ee) / static_cast<double>(point.pulses_sent_decoy));
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace qkdlab
