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

#include "qkdlab/exec.hpp"
#include "qkdlab/random.hpp"
#include "qkdlab/sources.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qkdlab {

// `loss` removes whole pulses. `dephasing` is the dark-port probability d an
// ancilla shows at Bob's interferometer with no eavesdropper (0.5 = no
// remaining coherence).
struct ChannelConfig {
  double loss = 0.0;
  double dephasing = 0.0;

  double transmittivity() const noexcept { return 1.0 - loss; }
  void validate() const;
};

enum class EveKind { Absent, PnsQnd };

// PnsQnd replaces the line with a lossless one and counterfeits
// `replaced_loss` by blocking pulses.
struct EveStrategy {
  EveKind kind = EveKind::Absent;
  double replaced_loss = 0.0;

  void validate() const;
};

struct AttackLedger {
  std::uint64_t pulses_seen = 0;
  std::uint64_t pulses_blocked = 0;
  std::uint64_t pulses_split = 0;
  std::uint64_t photons_stored = 0;
  std::vector<std::size_t> known_bit_indices;  // ascending

  std::uint64_t pulses_forwarded() const noexcept { return pulses_seen - pulses_blocked; }
  bool knows(std::size_t index) const;

  friend bool operator==(const AttackLedger&, const AttackLedger&) = default;
};

// Whole-pulse loss: nullopt means the pulse was lost.
std::optional<PulseRecord> apply_loss(const PulseRecord& pulse, const ChannelConfig& cfg,
                                      RandomStream& rng);

// Superposed ancillas get coherence 1 - 2d; everything else passes unchanged.
PulseRecord apply_dephasing(PulseRecord pulse, const ChannelConfig& cfg);

struct EveOutput {
  std::vector<std::optional<PulseRecord>> pulses;  // nullopt: blocked
  AttackLedger ledger;

  friend bool operator==(const EveOutput&, const EveOutput&) = default;
};

// Photon-number-splitting attack over one batch of pulses.
//
// Eve reads every photon number with an ideal QND measurement. Multi-photon
// pulses lose one photon to her memory and are forwarded; single-photon
// pulses are forwarded with the probability that brings the expected number
// of forwarded nonvacuum pulses to (1 - replaced_loss) times the number sent.
// When the multi-photon pulses alone exceed that budget, all singles are
// blocked and each multi is forwarded with probability budget / multis.
// Vacuum passes through. Measuring the number of an ancilla collapses its
// time-bin superposition onto early or late with equal probability.
//
// Randomness for pulse i comes from family.at(i) only.
EveOutput eve_process_stream(std::span<const PulseRecord> pulses, const EveStrategy& strategy,
                             const StreamFamily& family, Exec exec = Exec::serial);

struct ReceivedShares {
  double fraction1 = 0.0;
  double fraction2 = 0.0;
  std::uint64_t forwarded_nonvacuum = 0;
};

// Monte Carlo of decoy emission followed by the PNS attack with
// replaced_loss = loss; returns the class shares among forwarded nonvacuum
// pulses. Throws DegenerateError when nothing is forwarded.
ReceivedShares eve_decoy_fractions(const DecoyIntensityConfig& cfg, double loss,
                                   std::uint64_t n_pulses, std::uint64_t seed,
                                   Exec exec = Exec::serial);

}  // namespace qkdlab
