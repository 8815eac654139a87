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

#include "qkdlab/config.hpp"
#include "qkdlab/csv.hpp"
#include "qkdlab/decoy.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qkdlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitIo = 4;

// Entry point behind the `qkdlab` binary. Subcommands: chernoff, ee-curve,
// decoy-curve, compare, simulate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// `steps` evenly spaced points from lo to hi inclusive (just lo for steps = 1).
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

// Seed precedence: flag, then QKDLAB_SEED, then the config file.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value,
                           std::uint64_t config_seed);

std::string chernoff_report(double p, double q, double max_error);

// Columns dephasing,trials_needed.
CsvTable ee_curve_table(double d_min, double d_max, std::size_t steps, double confidence);

struct DecoyCurveOptions {
  double loss_min = 0.05;
  double loss_max = 0.95;
  std::size_t steps = 19;
  DecoyIntensityConfig intensities = DecoyIntensityConfig::defaults();
  double confidence = 0.99;
  double d_low = 0.10;
  double d_high = 0.30;
};

// Columns loss,pulses_decoy,pulses_ee_dLL,pulses_ee_dHH,ratio_dLL, where LL
// and HH are the dephasing levels in percent; `with_high_ratio` appends
// ratio_dHH (the compare table).
CsvTable decoy_curve_table(const DecoyCurveOptions& opts, bool with_high_ratio = false);

// Plain-text verdicts printed by `compare`.
std::string comparison_summary(const DecoyCurveOptions& opts);

struct SimulationOutput {
  std::string summary_csv;
  std::string slot_log_csv;
  std::string console;
};

SimulationOutput simulate(const ScenarioConfig& cfg, bool with_slot_log);

}  // namespace qkdlab::cli
