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

#include "qkdlab/random.hpp"

#include <cstdint>
#include <optional>

namespace qkdlab {

enum class Polarization : std::uint8_t { H, V, D, A };
enum class Basis : std::uint8_t { Rectilinear, Diagonal };

constexpr Basis basis_of(Polarization pol) {
  return pol == Polarization::H || pol == Polarization::V ? Basis::Rectilinear
                                                           : Basis::Diagonal;
}

// H and D carry bit 0, V and A carry bit 1.
constexpr std::uint8_t bit_of(Polarization pol) {
  return pol == Polarization::V || pol == Polarization::A ? 1 : 0;
}

constexpr Polarization encode(Basis basis, std::uint8_t bit) {
  if (basis == Basis::Rectilinear) {
    return bit ? Polarization::V : Polarization::H;
  }
  return bit ? Polarization::A : Polarization::D;
}

enum class SourceClass : std::uint8_t { Signal, DecoyIntensity1, DecoyIntensity2, EntangledAncilla };

enum class TimeBin : std::uint8_t { None, Superposed, CollapsedEarly, CollapsedLate };

// One emitted optical pulse.
//
// Signal and decoy-intensity pulses never carry a time-bin state. Heralded
// ancilla pulses carry at most one photon and a time-bin state; `coherence`
// is the off-diagonal weight of the early/late superposition (1 for the
// ideal (|10> + |01>)/sqrt(2), 0 when fully dephased) and is only meaningful
// while `timebin == Superposed`.
struct PulseRecord {
  SourceClass source_class = SourceClass::Signal;
  double mean_photon_number = 0.0;
  std::uint32_t photon_count = 0;
  std::optional<Polarization> polarization;
  TimeBin timebin = TimeBin::None;
  double coherence = 0.0;
  std::int64_t emission_tick = 0;

  bool is_ancilla() const noexcept { return source_class == SourceClass::EntangledAncilla; }
  bool is_vacuum() const noexcept { return photon_count == 0; }

  friend bool operator==(const PulseRecord&, const PulseRecord&) = default;
};

struct WlpSourceConfig {
  double mu = 0.5;

  // Throws DomainError for mu < 0.
  void validate() const;
};

// Two-intensity coherent source. fraction2 is stored as 1 - fraction1 so the
// shares always sum to one.
class DecoyIntensityConfig {
 public:
  // Throws DomainError for negative intensities, fractions outside [0,1] or
  // fractions that do not sum to one.
  DecoyIntensityConfig(double mu1, double mu2, double fraction1, double fraction2);

  static DecoyIntensityConfig defaults() { return {0.1, 0.5, 0.7, 0.3}; }

  double mu1() const noexcept { return mu1_; }
  double mu2() const noexcept { return mu2_; }
  double fraction1() const noexcept { return fraction1_; }
  double fraction2() const noexcept { return 1.0 - fraction1_; }

  // Equal intensities are accepted but give a scheme that cannot see PNS.
  bool intensities_equal() const noexcept { return mu1_ == mu2_; }

 private:
  double mu1_;
  double mu2_;
  double fraction1_;
};

// Probability that an ancilla leaves Alice's second beamsplitter into the
// channel (balanced splitters). Only used to convert launched pulses into
// generated pulses; the other exit is heralded and discarded in her lab.
inline constexpr double kChannelLaunchProbability = 0.5;

// P_n = mu^n e^{-mu} / n!.
double poisson_pmf(double mu, std::uint32_t n);

// P_M = 1 - P_0 - P_1.
double multi_photon_probability(double mu);

double nonvacuum_probability(double mu);

// Inversion sampling driven only by `rng`.
std::uint32_t sample_poisson(double mu, RandomStream& rng);

std::uint32_t sample_photon_number(const WlpSourceConfig& cfg, RandomStream& rng);

Polarization sample_polarization(RandomStream& rng);

PulseRecord emit_signal_pulse(const WlpSourceConfig& cfg, RandomStream& rng,
                              std::int64_t tick = 0);

// Heralded single photon in the ideal early/late superposition, post-selected
// on having entered the channel. `tick` is the herald timestamp.
PulseRecord emit_heralded_ancilla(RandomStream& rng, std::int64_t tick = 0);

PulseRecord emit_decoy_pulse(const DecoyIntensityConfig& cfg, RandomStream& rng,
                             std::int64_t tick = 0);

}  // namespace qkdlab
