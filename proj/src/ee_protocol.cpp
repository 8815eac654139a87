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

#include "qkdlab/ee_protocol.hpp"

#include "qkdlab/errors.hpp"
#include "qkdlab/stats.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace qkdlab {
namespace {

void require_pair(double signal, double decoy, const char* who) {
  if (!(signal >= 0.0 && signal <= 1.0 && decoy >= 0.0 && decoy <= 1.0)) {
    throw DomainError(fmt::format("{} mode frequencies ({}, {}) outside [0, 1]", who, signal, decoy));
  }
  if (std::abs(signal + decoy - 1.0) > 1e-12) {
    throw DomainError(fmt::format("{} mode frequencies sum to {}, not 1", who, signal + decoy));
  }
}

void require_confidence(double confidence) {
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw DomainError(fmt::format("confidence = {} outside (0.5, 1)", confidence));
  }
}

PulseRecord emit_alice_pulse(Mode mode, const SignalSource& source, RandomStream& rng,
                             std::int64_t tick) {
  if (mode == Mode::Decoy) {
    return emit_heralded_ancilla(rng, tick);
  }
  return std::visit(
      [&](const auto& cfg) -> PulseRecord {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, WlpSourceConfig>) {
          return emit_signal_pulse(cfg, rng, tick);
        } else {
          return emit_decoy_pulse(cfg, rng, tick);
        }
      },
      source);
}

}  // namespace

ModeSchedule::ModeSchedule(double f_SA, double f_DA, double f_SB, double f_DB)
    : f_DA_(f_DA), f_DB_(f_DB) {
  require_pair(f_SA, f_DA, "Alice");
  require_pair(f_SB, f_DB, "Bob");
}

CategoryFrequencies category_frequencies(const ModeSchedule& s) {
  return {s.f_SA() * s.f_SB() + s.f_DA() * s.f_SB(), s.f_DA() * s.f_DB(), s.f_SA() * s.f_DB()};
}

InterferometerOutcome interferometer_outcome(const PulseRecord& pulse, RandomStream& rng) {
  if (!pulse.is_ancilla() || pulse.timebin == TimeBin::None || pulse.is_vacuum()) {
    throw std::invalid_argument("interferometer_outcome needs a nonvacuum ancilla pulse");
  }
  const double path = rng.uniform();
  const double port = rng.uniform();
  if (path < 0.25) {
    return InterferometerOutcome::SS;
  }
  if (path < 0.5) {
    return InterferometerOutcome::LL;
  }
  const double bright = pulse.timebin == TimeBin::Superposed ? 0.5 * (1.0 + pulse.coherence) : 0.5;
  return port < bright ? InterferometerOutcome::MiddleBright : InterferometerOutcome::MiddleDark;
}

std::string_view to_string(Mode mode) { return mode == Mode::Signal ? "signal" : "decoy"; }

std::string_view to_string(SlotCategory category) {
  switch (category) {
    case SlotCategory::KeyExchange: return "key";
    case SlotCategory::DecoyDetection: return "decoy";
    case SlotCategory::Wasted: return "wasted";
  }
  return "?";
}

std::string_view to_string(SlotDetail detail) {
  switch (detail) {
    case SlotDetail::None: return "none";
    case SlotDetail::SS: return "SS";
    case SlotDetail::LL: return "LL";
    case SlotDetail::MiddleBright: return "middle_bright";
    case SlotDetail::MiddleDark: return "middle_dark";
    case SlotDetail::Lost: return "lost";
    case SlotDetail::SiftedBit: return "sifted";
    case SlotDetail::BasisMismatch: return "basis_mismatch";
  }
  return "?";
}

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::NoEavesdropper: return "NoEavesdropper";
    case Decision::EavesdropperDetected: return "EavesdropperDetected";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ExchangeResult run_bb84_exchange(std::uint64_t n_slots, const SignalSource& source,
                                 const ModeSchedule& schedule, const ChannelConfig& channel,
                                 const EveStrategy& eve, std::uint64_t seed, Exec exec) {
  channel.validate();
  eve.validate();
  std::visit(
      [](const auto& cfg) {
        if constexpr (std::is_same_v<std::decay_t<decltype(cfg)>, WlpSourceConfig>) {
          cfg.validate();
        }
      },
      source);

  const std::size_t n = n_slots;
  const StreamFamily schedule_rng(seed, Substream::schedule);
  const StreamFamily source_rng(seed, Substream::source);
  const StreamFamily channel_rng(seed, Substream::channel);
  const StreamFamily bob_rng(seed, Substream::bob);

  ExchangeResult result;
  result.slots.resize(n);
  std::vector<PulseRecord> sent(n);

  parallel_for(exec, n, [&](std::size_t i) {
    RandomStream modes = schedule_rng.at(i);
    SlotOutcome& slot = result.slots[i];
    slot.alice_mode = modes.uniform() < schedule.f_DA() ? Mode::Decoy : Mode::Signal;
    slot.bob_mode = modes.uniform() < schedule.f_DB() ? Mode::Decoy : Mode::Signal;
    slot.category = classify_slot(slot.alice_mode, slot.bob_mode);
    RandomStream emit = source_rng.at(i);
    sent[i] = emit_alice_pulse(slot.alice_mode, source, emit, static_cast<std::int64_t>(i));
    slot.photons_sent = sent[i].photon_count;
    slot.alice_bit = bit_of(*sent[i].polarization);
  });

  std::vector<std::optional<PulseRecord>> arrived;
  if (eve.kind == EveKind::Absent) {
    arrived.resize(n);
    parallel_for(exec, n, [&](std::size_t i) {
      RandomStream rng = channel_rng.at(i);
      auto pulse = apply_loss(sent[i], channel, rng);
      if (pulse) {
        pulse = apply_dephasing(*pulse, channel);
      }
      arrived[i] = pulse;
    });
    result.ledger.pulses_seen = n;
  } else {
    std::vector<PulseRecord> dephased(n);
    parallel_for(exec, n, [&](std::size_t i) { dephased[i] = apply_dephasing(sent[i], channel); });
    EveOutput attacked =
        eve_process_stream(dephased, eve, StreamFamily(seed, Substream::eve), exec);
    arrived = std::move(attacked.pulses);
    result.ledger = std::move(attacked.ledger);
  }

  parallel_for(exec, n, [&](std::size_t i) {
    SlotOutcome& slot = result.slots[i];
    slot.split = result.ledger.knows(i);
    RandomStream rng = bob_rng.at(i);
    const Basis bob_basis = rng.below(2) == 0 ? Basis::Rectilinear : Basis::Diagonal;
    const std::uint8_t coin = static_cast<std::uint8_t>(rng.below(2));
    const auto& pulse = arrived[i];
    const bool clicked = pulse.has_value() && !pulse->is_vacuum();

    switch (slot.category) {
      case SlotCategory::Wasted:
        slot.detail = SlotDetail::None;
        return;
      case SlotCategory::DecoyDetection:
        if (!clicked) {
          slot.detail = SlotDetail::Lost;
          return;
        }
        switch (interferometer_outcome(*pulse, rng)) {
          case InterferometerOutcome::SS: slot.detail = SlotDetail::SS; break;
          case InterferometerOutcome::LL: slot.detail = SlotDetail::LL; break;
          case InterferometerOutcome::MiddleBright: slot.detail = SlotDetail::MiddleBright; break;
          case InterferometerOutcome::MiddleDark: slot.detail = SlotDetail::MiddleDark; break;
        }
        return;
      case SlotCategory::KeyExchange: {
        if (!clicked) {
          slot.detail = SlotDetail::Lost;
          return;
        }
        const Polarization pol = *pulse->polarization;
        if (basis_of(pol) == bob_basis) {
          slot.bob_bit = bit_of(pol);
          slot.detail = SlotDetail::SiftedBit;
        } else {
          slot.bob_bit = coin;
          slot.detail = SlotDetail::BasisMismatch;
        }
        return;
      }
    }
  });

  ExchangeStats& st = result.stats;
  st.n_slots = n_slots;
  for (std::size_t i = 0; i < n; ++i) {
    const SlotOutcome& slot = result.slots[i];
    st.pulses_sent_nonvacuum += slot.photons_sent > 0;
    const auto& pulse = arrived[i];
    if (pulse && !pulse->is_vacuum()) {
      ++st.pulses_received;
      if (basis_of(*pulse->polarization) == Basis::Rectilinear) {
        ++st.received_rectilinear;
      } else {
        ++st.received_diagonal;
      }
      st.received_class1 += pulse->source_class == SourceClass::DecoyIntensity1;
      st.received_class2 += pulse->source_class == SourceClass::DecoyIntensity2;
    }
    switch (slot.category) {
      case SlotCategory::KeyExchange: ++st.key_slots; break;
      case SlotCategory::DecoyDetection: ++st.decoy_slots; break;
      case SlotCategory::Wasted: ++st.wasted_slots; break;
    }
    switch (slot.detail) {
      case SlotDetail::SiftedBit:
        ++st.key_detections;
        result.sifted_key_a.push_back(slot.alice_bit);
        result.sifted_key_b.push_back(slot.bob_bit);
        st.sifted_errors += slot.alice_bit != slot.bob_bit;
        st.eve_known_bits += slot.split;
        break;
      case SlotDetail::BasisMismatch: ++st.key_detections; break;
      case SlotDetail::SS:
        ++st.ss;
        result.evidence.push_back(InterferometerOutcome::SS);
        break;
      case SlotDetail::LL:
        ++st.ll;
        result.evidence.push_back(InterferometerOutcome::LL);
        break;
      case SlotDetail::MiddleBright:
        ++st.middle_bright;
        result.evidence.push_back(InterferometerOutcome::MiddleBright);
        break;
      case SlotDetail::MiddleDark:
        ++st.middle_dark;
        result.evidence.push_back(InterferometerOutcome::MiddleDark);
        break;
      case SlotDetail::None:
      case SlotDetail::Lost: break;
    }
  }
  st.sifted_length = result.sifted_key_a.size();
  if (st.sifted_length > 0) {
    const auto len = static_cast<double>(st.sifted_length);
    st.qber = static_cast<double>(st.sifted_errors) / len;
    st.eve_known_fraction = static_cast<double>(st.eve_known_bits) / len;
  }
  return result;
}

DetectionReport detect_eavesdropper(std::span<const InterferometerOutcome> stream,
                                    const ChannelConfig& channel, double confidence) {
  require_confidence(confidence);
  channel.validate();
  const BernoulliHypothesisPair h(1.0 - channel.dephasing, 0.5);
  DetectionReport report;
  report.trials_required = trials_needed(h, 1.0 - confidence);
  report.chernoff = chernoff_distance(h);

  for (const InterferometerOutcome outcome : stream) {
    if (report.trials_used == report.trials_required) {
      break;
    }
    switch (outcome) {
      case InterferometerOutcome::SS: ++report.ss; break;
      case InterferometerOutcome::LL: ++report.ll; break;
      case InterferometerOutcome::MiddleBright:
        ++report.middle_bright;
        ++report.trials_used;
        break;
      case InterferometerOutcome::MiddleDark:
        ++report.middle_dark;
        ++report.trials_used;
        break;
    }
  }
  if (report.trials_used < report.trials_required) {
    report.decision = Decision::Inconclusive;
    return report;
  }
  report.decision = decide_hypothesis(report.middle_bright, report.trials_used, h) == Hypothesis::Null
                        ? Decision::NoEavesdropper
                        : Decision::EavesdropperDetected;
  return report;
}

std::vector<std::pair<double, std::uint64_t>> trials_vs_dephasing_curve(
    std::span<const double> dephasing_grid, double confidence) {
  require_confidence(confidence);
  std::vector<std::pair<double, std::uint64_t>> curve;
  curve.reserve(dephasing_grid.size());
  for (const double d : dephasing_grid) {
    if (!(d >= 0.0 && d < 0.5)) {
      throw DomainError(fmt::format("dephasing d = {} outside [0, 0.5)", d));
    }
    curve.emplace_back(d, trials_needed(BernoulliHypothesisPair(1.0 - d, 0.5), 1.0 - confidence));
  }
  return curve;
}

}  // namespace qkdlab
