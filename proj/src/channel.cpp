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

#include "qkdlab/channel.hpp"

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace qkdlab {

void ChannelConfig::validate() const {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw DomainError(fmt::format("loss = {} outside [0, 1]", loss));
  }
  if (!(dephasing >= 0.0 && dephasing <= 0.5)) {
    throw DomainError(fmt::format("dephasing = {} outside [0, 0.5]", dephasing));
  }
}

void EveStrategy::validate() const {
  if (!(replaced_loss >= 0.0 && replaced_loss <= 1.0)) {
    throw DomainError(fmt::format("replaced_loss = {} outside [0, 1]", replaced_loss));
  }
}

bool AttackLedger::knows(std::size_t index) const {
  return std::binary_search(known_bit_indices.begin(), known_bit_indices.end(), index);
}

std::optional<PulseRecord> apply_loss(const PulseRecord& pulse, const ChannelConfig& cfg,
                                      RandomStream& rng) {
  if (rng.uniform() < cfg.loss) {
    return std::nullopt;
  }
  return pulse;
}

PulseRecord apply_dephasing(PulseRecord pulse, const ChannelConfig& cfg) {
  if (pulse.is_ancilla() && pulse.timebin == TimeBin::Superposed) {
    pulse.coherence = 1.0 - 2.0 * cfg.dephasing;
  }
  return pulse;
}

EveOutput eve_process_stream(std::span<const PulseRecord> pulses, const EveStrategy& strategy,
                             const StreamFamily& family, Exec exec) {
  strategy.validate();
  const std::size_t n = pulses.size();
  EveOutput out;
  out.ledger.pulses_seen = n;

  if (strategy.kind == EveKind::Absent) {
    out.pulses.assign(pulses.begin(), pulses.end());
    return out;
  }

  const std::uint64_t singles =
      parallel_count(exec, n, [&](std::size_t i) { return pulses[i].photon_count == 1; });
  const std::uint64_t multis =
      parallel_count(exec, n, [&](std::size_t i) { return pulses[i].photon_count >= 2; });
  const double budget =
      (1.0 - strategy.replaced_loss) * static_cast<double>(singles + multis);

  double forward_single = 0.0;
  double forward_multi = 1.0;
  if (static_cast<double>(multis) <= budget) {
    forward_single = singles > 0 ? (budget - static_cast<double>(multis)) /
                                       static_cast<double>(singles)
                                 : 0.0;
  } else {
    forward_multi = budget / static_cast<double>(multis);
  }

  // 0: forwarded untouched, 1: blocked, 2: split and forwarded
  std::vector<std::uint8_t> action(n, 0);
  out.pulses.resize(n);
  parallel_for(exec, n, [&](std::size_t i) {
    RandomStream rng = family.at(i);
    const double u_forward = rng.uniform();
    const double u_collapse = rng.uniform();
    PulseRecord pulse = pulses[i];
    if (pulse.is_vacuum()) {
      out.pulses[i] = pulse;
      return;
    }
    if (pulse.is_ancilla() && pulse.timebin == TimeBin::Superposed) {
      pulse.timebin = u_collapse < 0.5 ? TimeBin::CollapsedEarly : TimeBin::CollapsedLate;
      pulse.coherence = 0.0;
    }
    const bool multi = pulse.photon_count >= 2;
    const bool forward = u_forward < (multi ? forward_multi : forward_single);
    if (!forward) {
      action[i] = 1;
      return;
    }
    if (multi) {
      pulse.photon_count -= 1;
      action[i] = 2;
    }
    out.pulses[i] = pulse;
  });

  AttackLedger& ledger = out.ledger;
  for (std::size_t i = 0; i < n; ++i) {
    if (action[i] == 1) {
      ++ledger.pulses_blocked;
    } else if (action[i] == 2) {
      ++ledger.pulses_split;
      ledger.known_bit_indices.push_back(i);
    }
  }
  ledger.photons_stored = ledger.pulses_split;
  return out;
}

ReceivedShares eve_decoy_fractions(const DecoyIntensityConfig& cfg, double loss,
                                   std::uint64_t n_pulses, std::uint64_t seed, Exec exec) {
  const StreamFamily source(seed, Substream::source);
  std::vector<PulseRecord> sent(n_pulses);
  parallel_for(exec, n_pulses, [&](std::size_t i) {
    RandomStream rng = source.at(i);
    sent[i] = emit_decoy_pulse(cfg, rng, static_cast<std::int64_t>(i));
  });

  const EveOutput attacked = eve_process_stream(
      sent, EveStrategy{EveKind::PnsQnd, loss}, StreamFamily(seed, Substream::eve), exec);

  ReceivedShares shares;
  std::uint64_t class1 = 0;
  for (const auto& pulse : attacked.pulses) {
    if (pulse && !pulse->is_vacuum()) {
      ++shares.forwarded_nonvacuum;
      class1 += pulse->source_class == SourceClass::DecoyIntensity1;
    }
  }
  if (shares.forwarded_nonvacuum == 0) {
    throw DegenerateError("no nonvacuum pulses were forwarded");
  }
  shares.fraction1 =
      static_cast<double>(class1) / static_cast<double>(shares.forwarded_nonvacuum);
  shares.fraction2 = 1.0 - shares.fraction1;
  return shares;
}

}  // namespace qkdlab
