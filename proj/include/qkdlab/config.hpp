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
#include "qkdlab/ee_protocol.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>

namespace qkdlab {

// Scenario file grammar (one item per line):
//
//   # comment               (also allowed after a value)
//   [section]               experiment_cli | sources | ee_protocol | channels_adversary
//   key = value
//
// Keys before the first section header belong to [experiment_cli]:
//   scenario_name, seed, n_slots, confidence
// [sources]            kind = wlp | decoy, mu, mu1, mu2, fraction1, fraction2
// [ee_protocol]        f_SA, f_DA, f_SB, f_DB (a missing partner is the complement)
// [channels_adversary] loss, dephasing, eve = absent | pns_qnd,
//                      replaced_loss (defaults to loss)
//
// Unknown sections or keys, duplicates, malformed numbers and out-of-range
// values raise ConfigError carrying the line and field.
struct ScenarioConfig {
  std::string scenario_name = "default";
  SignalSource source = WlpSourceConfig{};
  ModeSchedule schedule = ModeSchedule::from_decoy_frequencies(0.1, 0.1);
  ChannelConfig channel;
  EveStrategy eve;
  double confidence = 0.99;
  std::uint64_t n_slots = 100000;
  std::uint64_t seed = 1;
};

ScenarioConfig parse_scenario(std::istream& in, const std::string& source_name = "<config>");

// Throws IoError if the file cannot be opened.
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace qkdlab
