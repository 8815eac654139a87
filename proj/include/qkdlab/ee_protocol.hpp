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

#include "qkdlab/channel.hpp"
#include "qkdlab/exec.hpp"
#include "qkdlab/random.hpp"
#include "qkdlab/sources.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qkdlab {

enum class Mode : std::uint8_t { Signal, Decoy };

// Per-slot mode frequencies for Alice and Bob. The signal frequencies are
// stored as complements, so f_SA + f_DA = f_SB + f_DB = 1 by construction.
class ModeSchedule {
 public:
  // Throws DomainError unless each pair lies in [0,1] and sums to one.
  ModeSchedule(double f_SA, double f_DA, double f_SB, double f_DB);

  static ModeSchedule from_decoy_frequencies(double f_DA, double f_DB) {
    return {1.0 - f_DA, f_DA, 1.0 - f_DB, f_DB};
  }

  double f_SA() const noexcept { return 1.0 - f_DA_; }
  double f_DA() const noexcept { return f_DA_; }
  double f_SB() const noexcept { return 1.0 - f_DB_; }
  double f_DB() const noexcept { return f_DB_; }

 private:
  double f_DA_;
  double f_DB_;
};

enum class SlotCategory : std::uint8_t { KeyExchange, DecoyDetection, Wasted };

// Bob's mode decides whether a slot carries polarization (signal) or phase
// (decoy) information; a signal pulse measured for phase is wasted.
constexpr SlotCategory classify_slot(Mode alice, Mode bob) {
  if (bob == Mode::Signal) {
    return SlotCategory::KeyExchange;
  }
  return alice == Mode::Decoy ? SlotCategory::DecoyDetection : SlotCategory::Wasted;
}

struct CategoryFrequencies {
  double key_exchange = 0.0;     // f_SA f_SB + f_DA f_SB
  double decoy_detection = 0.0;  // f_DA f_DB
  double wasted = 0.0;           // f_SA f_DB
};

CategoryFrequencies category_frequencies(const ModeSchedule& schedule);

enum class InterferometerOutcome : std::uint8_t { SS, LL, MiddleBright, MiddleDark };

// SS and LL each occur with probability 1/4 for balanced splitters; the two
// indistinguishable middle paths together with 1/2.
inline constexpr double kMiddleBinProbability = 0.5;

// Path class and port for an ancilla at Bob's interferometer. A middle-bin
// photon is bright with probability (1 + coherence) / 2 when its
// superposition survived, and 1/2 after Eve's number measurement collapsed
// it. Throws std::invalid_argument for non-ancilla or vacuum pulses.
InterferometerOutcome interferometer_outcome(const PulseRecord& pulse, RandomStream& rng);

enum class SlotDetail : std::uint8_t {
  None,
  SS,
  LL,
  MiddleBright,
  MiddleDark,
  Lost,
  SiftedBit,
  BasisMismatch,
};

struct SlotOutcome {
  Mode alice_mode = Mode::Signal;
  Mode bob_mode = Mode::Signal;
  SlotCategory category = SlotCategory::KeyExchange;
  SlotDetail detail = SlotDetail::None;
  std::uint8_t alice_bit = 0;
  std::uint8_t bob_bit = 0;
  std::uint32_t photons_sent = 0;
  bool split = false;

  friend bool operator==(const SlotOutcome&, const SlotOutcome&) = default;
};

std::string_view to_string(Mode mode);
std::string_view to_string(SlotCategory category);
std::string_view to_string(SlotDetail detail);

using SignalSource = std::variant<WlpSourceConfig, DecoyIntensityConfig>;

struct ExchangeStats {
  std::uint64_t n_slots = 0;
  std::uint64_t key_slots = 0;
  std::uint64_t decoy_slots = 0;
  std::uint64_t wasted_slots = 0;
  std::uint64_t pulses_sent_nonvacuum = 0;
  std::uint64_t pulses_received = 0;  // nonvacuum pulses reaching Bob, any slot
  std::uint64_t key_detections = 0;   // key slots where Bob registered a click
  std::uint64_t received_rectilinear = 0;
  std::uint64_t received_diagonal = 0;
  std::uint64_t received_class1 = 0;  // decoy-intensity sources only
  std::uint64_t received_class2 = 0;
  std::uint64_t sifted_length = 0;
  std::uint64_t sifted_errors = 0;
  double qber = 0.0;
  std::uint64_t eve_known_bits = 0;
  double eve_known_fraction = 0.0;
  std::uint64_t ss = 0;
  std::uint64_t ll = 0;
  std::uint64_t middle_bright = 0;
  std::uint64_t middle_dark = 0;

  friend bool operator==(const ExchangeStats&, const ExchangeStats&) = default;
};

struct ExchangeResult {
  std::vector<std::uint8_t> sifted_key_a;
  std::vector<std::uint8_t> sifted_key_b;
  ExchangeStats stats;
  std::vector<SlotOutcome> slots;
  // Interferometer outcomes of the decoy-detection slots, in slot order.
  std::vector<InterferometerOutcome> evidence;
  AttackLedger ledger;

  friend bool operator==(const ExchangeResult&, const ExchangeResult&) = default;
};

// End-to-end EE BB84 run over n_slots time slots.
//
// Each slot: independent Alice/Bob mode choices; Alice emits a signal pulse
// (signal mode) or a heralded ancilla (decoy mode), both with a random BB84
// polarization; the pulse crosses the channel (or Eve's replacement line);
// Bob measures polarization in a random basis (signal mode) or runs the
// time-bin interferometer (decoy mode). Substreams: schedule, source,
// channel, eve and bob, each indexed by slot.
ExchangeResult run_bb84_exchange(std::uint64_t n_slots, const SignalSource& source,
                                 const ModeSchedule& schedule, const ChannelConfig& channel,
                                 const EveStrategy& eve, std::uint64_t seed,
                                 Exec exec = Exec::serial);

enum class Decision : std::uint8_t { NoEavesdropper, EavesdropperDetected, Inconclusive };

std::string_view to_string(Decision decision);

struct DetectionReport {
  std::uint64_t middle_bright = 0;
  std::uint64_t middle_dark = 0;
  std::uint64_t ss = 0;
  std::uint64_t ll = 0;
  double chernoff = 0.0;
  std::uint64_t trials_required = 0;
  std::uint64_t trials_used = 0;  // middle_bright + middle_dark
  Decision decision = Decision::Inconclusive;

  friend bool operator==(const DetectionReport&, const DetectionReport&) = default;
};

// Fixed-sample test on middle-bin events: null p = 1 - d (bright), alternative
// q = 1/2. Consumes events until trials_needed(h, 1 - confidence) middle
// events are seen, then decides; Inconclusive if the stream runs out first.
// Throws DomainError unless 0.5 < confidence < 1, UnreachableError at d = 0.5.
DetectionReport detect_eavesdropper(std::span<const InterferometerOutcome> stream,
                                    const ChannelConfig& channel, double confidence);

// n(d) = trials_needed(1 - d, 1/2, 1 - confidence) for every d in the grid.
// Throws DomainError for d outside [0, 0.5).
std::vector<std::pair<double, std::uint64_t>> trials_vs_dephasing_curve(
    std::span<const double> dephasing_grid, double confidence);

}  // namespace qkdlab
