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
#include "qkdlab/kernels.hpp"
#include "qkdlab/stats.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace qkdlab;

TEST_CASE("mode schedule validation") {
  CHECK_THROWS_AS(ModeSchedule(0.8, 0.1, 0.9, 0.1), DomainError);
  CHECK_THROWS_AS(ModeSchedule(1.2, -0.2, 0.9, 0.1), DomainError);
  const ModeSchedule s(0.9, 0.1, 0.8, 0.2);
  CHECK(s.f_SA() + s.f_DA() == 1.0);
  CHECK(s.f_SB() + s.f_DB() == 1.0);
}

TEST_CASE("slot classification") {
  CHECK(classify_slot(Mode::Signal, Mode::Signal) == SlotCategory::KeyExchange);
  CHECK(classify_slot(Mode::Decoy, Mode::Signal) == SlotCategory::KeyExchange);
  CHECK(classify_slot(Mode::Decoy, Mode::Decoy) == SlotCategory::DecoyDetection);
  CHECK(classify_slot(Mode::Signal, Mode::Decoy) == SlotCategory::Wasted);
}

TEST_CASE("category frequencies are the mode products") {
  const CategoryFrequencies dyadic = category_frequencies(ModeSchedule::from_decoy_frequencies(0.25, 0.125));
  CHECK(dyadic.key_exchange + dyadic.decoy_detection + dyadic.wasted == 1.0);
  CHECK(dyadic.decoy_detection == 0.25 * 0.125);

  const CategoryFrequencies plain = category_frequencies(ModeSchedule::from_decoy_frequencies(0.0, 0.0));
  CHECK(plain.key_exchange == 1.0);
  CHECK(plain.decoy_detection == 0.0);
  CHECK(plain.wasted == 0.0);

  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const CategoryFrequencies f =
        category_frequencies(ModeSchedule::from_decoy_frequencies(rng.uniform(), rng.uniform()));
    CHECK(std::abs(f.key_exchange + f.decoy_detection + f.wasted - 1.0) < 1e-15);
  }
}

TEST_CASE("decoy-detection frequency over a million slots") {
  const auto run = run_bb84_exchange(1000000, WlpSourceConfig{0.5},
                                     ModeSchedule::from_decoy_frequencies(0.1, 0.1), {}, {}, 3,
                                     Exec::openmp);
  CHECK(std::abs(run.stats.decoy_slots / 1e6 - 0.01) <= oracle::three_sigma(0.01, 1e6));
  CHECK(std::abs(run.stats.wasted_slots / 1e6 - 0.09) <= oracle::three_sigma(0.09, 1e6));
  CHECK(std::abs(run.stats.key_slots / 1e6 - 0.9) <= oracle::three_sigma(0.9, 1e6));
}

TEST_CASE("plain WLP BB84 uses every slot for key exchange") {
  const auto run = run_bb84_exchange(10000, WlpSourceConfig{0.5},
                                     ModeSchedule::from_decoy_frequencies(0.0, 0.0), {}, {}, 3);
  CHECK(run.stats.key_slots == 10000);
  CHECK(run.evidence.empty());
}

TEST_CASE("interferometer path classes and ports") {
  RandomStream rng(10);
  const PulseRecord ideal = emit_heralded_ancilla(rng);
  constexpr int kTrials = 100000;
  int ss = 0, ll = 0, bright = 0, dark = 0;
  for (int i = 0; i < kTrials; ++i) {
    switch (interferometer_outcome(ideal, rng)) {
      case InterferometerOutcome::SS: ++ss; break;
      case InterferometerOutcome::LL: ++ll; break;
      case InterferometerOutcome::MiddleBright: ++bright; break;
      case InterferometerOutcome::MiddleDark: ++dark; break;
    }
  }
  CHECK(dark == 0);
  CHECK(std::abs(ss / double(kTrials) - 0.25) <= oracle::three_sigma(0.25, kTrials));
  CHECK(std::abs(ll / double(kTrials) - 0.25) <= oracle::three_sigma(0.25, kTrials));
  CHECK(std::abs((bright + dark) / double(kTrials) - kMiddleBinProbability) <=
        oracle::three_sigma(0.5, kTrials));

  PulseRecord collapsed = ideal;
  collapsed.timebin = TimeBin::CollapsedLate;
  collapsed.coherence = 0.0;
  int middle = 0;
  bright = 0;
  while (middle < kTrials) {
    const auto out = interferometer_outcome(collapsed, rng);
    if (out == InterferometerOutcome::MiddleBright || out == InterferometerOutcome::MiddleDark) {
      ++middle;
      bright += out == InterferometerOutcome::MiddleBright;
    }
  }
  CHECK(std::abs(bright / double(middle) - 0.5) <= oracle::three_sigma(0.5, middle));

  CHECK_THROWS_AS(interferometer_outcome(emit_signal_pulse({0.5}, rng), rng), std::invalid_argument);
}

TEST_CASE("four-path amplitude bookkeeping gives 1/4, 1/4, 1/2") {
  // Each 50/50 splitter pass has amplitude 1/sqrt(2) per arm; two passes in
  // each lab give amplitude 1/2 for each of SS, LL, SL and LS. SL and LS
  // arrive together, so the middle bin collects 1/4 + 1/4.
  const double amp = 0.5;
  const double ss = amp * amp, ll = amp * amp, middle = 2 * amp * amp;
  CHECK(ss == 0.25);
  CHECK(ll == 0.25);
  CHECK(middle == kMiddleBinProbability);
}

TEST_CASE("ideal exchange without eve has zero QBER and equal keys") {
  const auto run = run_bb84_exchange(100000, WlpSourceConfig{0.5},
                                     ModeSchedule::from_decoy_frequencies(0.1, 0.1), {0.0, 0.0},
                                     {}, 77);
  CHECK(run.stats.qber == 0.0);
  CHECK(run.sifted_key_a == run.sifted_key_b);
  CHECK(run.stats.sifted_length > 0);
  CHECK(run.stats.eve_known_fraction == 0.0);
  CHECK(run.stats.middle_dark == 0);

  // Bases are independent and uniform: half of the detected key slots sift.
  const double match = run.stats.sifted_length / double(run.stats.key_detections);
  CHECK(std::abs(match - 0.5) <= oracle::three_sigma(0.5, run.stats.key_detections));
}

TEST_CASE("decoy-mode Alice with signal-mode Bob contributes key bits") {
  const auto run = run_bb84_exchange(20000, WlpSourceConfig{0.5},
                                     ModeSchedule::from_decoy_frequencies(1.0, 0.0), {}, {}, 4);
  CHECK(run.stats.key_slots == 20000);
  CHECK(run.stats.sifted_length > 0);
  for (const auto& s : run.slots) CHECK(s.photons_sent == 1);
}

TEST_CASE("eve's known-bit fraction follows her ledger") {
  const auto run = run_bb84_exchange(1000000, WlpSourceConfig{0.5},
                                     ModeSchedule::from_decoy_frequencies(0.0, 0.0), {0.5, 0.0},
                                     {EveKind::PnsQnd, 0.5}, 8, Exec::openmp);
  std::uint64_t forwarded_nonvacuum = 0, forwarded_split = 0;
  for (std::size_t i = 0; i < run.slots.size(); ++i) {
    if (run.slots[i].detail == SlotDetail::Lost || run.slots[i].photons_sent == 0) continue;
    ++forwarded_nonvacuum;
    forwarded_split += run.ledger.knows(i);
  }
  const double ledger_share = forwarded_split / double(forwarded_nonvacuum);
  CHECK(run.stats.eve_known_fraction > 0.0);
  CHECK(std::abs(run.stats.eve_known_fraction - ledger_share) <=
        oracle::three_sigma(ledger_share, run.stats.sifted_length));
  CHECK(run.stats.qber == 0.0);
}

TEST_CASE("conditional dark-port frequency") {
  for (double d : {0.0, 0.1, 0.3}) {
    const auto run = run_bb84_exchange(400000, WlpSourceConfig{0.5},
                                       ModeSchedule::from_decoy_frequencies(0.5, 0.5), {0.2, d},
                                       {}, 13, Exec::openmp);
    const double middle = run.stats.middle_bright + run.stats.middle_dark;
    CAPTURE(d);
    CHECK(std::abs(run.stats.middle_dark / middle - d) <= oracle::three_sigma(d, middle) + 1e-12);
  }
  for (double d : {0.0, 0.3}) {
    const auto run = run_bb84_exchange(400000, WlpSourceConfig{0.5},
                                       ModeSchedule::from_decoy_frequencies(0.5, 0.5), {0.2, d},
                                       {EveKind::PnsQnd, 0.2}, 14, Exec::openmp);
    const double middle = run.stats.middle_bright + run.stats.middle_dark;
    CAPTURE(d);
    CHECK(std::abs(run.stats.middle_dark / middle - 0.5) <= oracle::three_sigma(0.5, middle));
  }
}

TEST_CASE("coherence survives end to end without eve and dephasing") {
  RandomStream rng(3);
  const PulseRecord a = emit_heralded_ancilla(rng);
  const auto after = apply_loss(apply_dephasing(a, {0.3, 0.0}), {0.0, 0.0}, rng);
  REQUIRE(after.has_value());
  CHECK(after->coherence == 1.0);
  CHECK(after->timebin == TimeBin::Superposed);
}

TEST_CASE("detect_eavesdropper plans six trials in the ideal case") {
  std::vector<InterferometerOutcome> clean{
      InterferometerOutcome::SS,           InterferometerOutcome::MiddleBright,
      InterferometerOutcome::MiddleBright, InterferometerOutcome::LL,
      InterferometerOutcome::MiddleBright, InterferometerOutcome::MiddleBright,
      InterferometerOutcome::MiddleBright, InterferometerOutcome::MiddleBright,
      InterferometerOutcome::MiddleDark};
  const DetectionReport r = detect_eavesdropper(clean, {0.0, 0.0}, 0.99);
  CHECK(r.trials_required == 6);
  CHECK(r.trials_used == 6);
  CHECK(r.middle_dark == 0);
  CHECK(r.ss == 1);
  CHECK(r.ll == 1);
  CHECK(r.trials_used == r.middle_bright + r.middle_dark);
  CHECK(r.decision == Decision::NoEavesdropper);

  std::vector<InterferometerOutcome> one_dark(6, InterferometerOutcome::MiddleBright);
  one_dark[2] = InterferometerOutcome::MiddleDark;
  CHECK(detect_eavesdropper(one_dark, {0.0, 0.0}, 0.99).decision == Decision::EavesdropperDetected);

  std::vector<InterferometerOutcome> short_stream(5, InterferometerOutcome::MiddleBright);
  CHECK(detect_eavesdropper(short_stream, {0.0, 0.0}, 0.99).decision == Decision::Inconclusive);
}

TEST_CASE("detect_eavesdropper domain") {
  const std::vector<InterferometerOutcome> none;
  CHECK_THROWS_AS(detect_eavesdropper(none, {0.0, 0.5}, 0.99), UnreachableError);
  CHECK_THROWS_AS(detect_eavesdropper(none, {0.0, 0.1}, 0.5), DomainError);
  CHECK_THROWS_AS(detect_eavesdropper(none, {0.0, 0.1}, 1.0), DomainError);
  const DetectionReport r = detect_eavesdropper(none, {0.0, 0.25}, 0.99);
  CHECK(r.trials_required == oracle::trials_from_oracle(0.75, 0.5, 0.01));
  CHECK(r.trials_required == 113);  // frozen
}

TEST_CASE("trials versus dephasing") {
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.2, 0.25, 0.3, 0.4, 0.45, 0.49};
  const auto curve = trials_vs_dephasing_curve(grid, 0.99);
  CHECK(curve.front().second == 6);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second >= curve[i - 1].second);
  CHECK(curve[7].second == oracle::trials_from_oracle(0.55, 0.5, 0.01));
  CHECK(curve[7].second == 3118);  // frozen
  const std::vector<double> bad{0.1, 0.5};
  CHECK_THROWS_AS(trials_vs_dephasing_curve(bad, 0.99), DomainError);
}

TEST_CASE("detection error rate at d = 0.1 over equal-prior episodes") {
  EpisodeConfig cfg;
  cfg.schedule = ModeSchedule::from_decoy_frequencies(1.0, 1.0);
  cfg.channel = {0.0, 0.1};
  cfg.n_slots = 200;  // 35 middle events needed, ~100 expected
  cfg.eve = {EveKind::Absent, 0.0};
  const EpisodeSummary clean = run_detection_episodes(cfg, 5000, 100, Exec::openmp);
  cfg.eve = {EveKind::PnsQnd, 0.0};
  const EpisodeSummary attacked = run_detection_episodes(cfg, 5000, 200, Exec::openmp);
  CHECK(clean.inconclusive == 0);
  CHECK(attacked.inconclusive == 0);
  const double wrong = (clean.detected + attacked.cleared) / 10000.0;
  CHECK(wrong <= 0.01);
}
