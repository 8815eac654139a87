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

#include "qkdlab/config.hpp"

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>

namespace qkdlab {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

constexpr std::array<std::string_view, 4> kSections = {"experiment_cli", "sources", "ee_protocol",
                                                       "channels_adversary"};

constexpr std::array<std::string_view, 18> kKeys = {
    "experiment_cli.scenario_name", "experiment_cli.seed",       "experiment_cli.n_slots",
    "experiment_cli.confidence",    "sources.kind",              "sources.mu",
    "sources.mu1",                  "sources.mu2",               "sources.fraction1",
    "sources.fraction2",            "ee_protocol.f_SA",          "ee_protocol.f_DA",
    "ee_protocol.f_SB",             "ee_protocol.f_DB",          "channels_adversary.loss",
    "channels_adversary.dephasing", "channels_adversary.eve",    "channels_adversary.replaced_loss"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Entries {
 public:
  explicit Entries(std::string source) : source_(std::move(source)) {}

  void add(const std::string& key, std::string value, std::size_t line) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ConfigError(source_, line, key, "unknown key");
    }
    if (auto it = map_.find(key); it != map_.end()) {
      throw ConfigError(source_, line, key,
                        fmt::format("duplicate key (first set on line {})", it->second.line));
    }
    map_.emplace(key, Entry{std::move(value), line});
  }

  const Entry* find(const std::string& key) const {
    const auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  std::optional<double> real(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) {
      return std::nullopt;
    }
    double value = 0.0;
    const char* begin = e->value.data();
    const char* end = begin + e->value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw error(key, fmt::format("'{}' is not a number", e->value));
    }
    return value;
  }

  std::optional<std::uint64_t> integer(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) {
      return std::nullopt;
    }
    std::uint64_t value = 0;
    const char* begin = e->value.data();
    const char* end = begin + e->value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw error(key, fmt::format("'{}' is not a nonnegative integer", e->value));
    }
    return value;
  }

  ConfigError error(const std::string& key, const std::string& message) const {
    const Entry* e = find(key);
    return ConfigError(source_, e ? e->line : 0, key, message);
  }

  // First key of `keys` present in the file, for attributing combined checks.
  std::string first_present(std::initializer_list<const char*> keys) const {
    for (const char* k : keys) {
      if (find(k)) {
        return k;
      }
    }
    return *keys.begin();
  }

 private:
  std::string source_;
  std::map<std::string, Entry> map_;
};

template <class Fn>
auto attribute(const Entries& entries, const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw entries.error(key, e.what());
  }
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, const std::string& source_name) {
  Entries entries(source_name);
  std::string section = "experiment_cli";
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source_name, line_no, std::string(line), "unterminated section header");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end()) {
        throw ConfigError(source_name, line_no, name, "unknown section");
      }
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source_name, line_no, std::string(line), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(source_name, line_no, "", "missing key before '='");
    }
    if (value.empty()) {
      throw ConfigError(source_name, line_no, section + "." + key, "missing value");
    }
    entries.add(section + "." + key, value, line_no);
  }

  ScenarioConfig cfg;
  if (const Entry* e = entries.find("experiment_cli.scenario_name")) {
    cfg.scenario_name = e->value;
  }
  cfg.seed = entries.integer("experiment_cli.seed").value_or(cfg.seed);
  cfg.n_slots = entries.integer("experiment_cli.n_slots").value_or(cfg.n_slots);
  if (cfg.n_slots == 0) {
    throw entries.error("experiment_cli.n_slots", "must be positive");
  }
  cfg.confidence = entries.real("experiment_cli.confidence").value_or(cfg.confidence);
  if (!(cfg.confidence > 0.5 && cfg.confidence < 1.0)) {
    throw entries.error("experiment_cli.confidence", "must lie in (0.5, 1)");
  }

  std::string kind = "wlp";
  if (const Entry* e = entries.find("sources.kind")) {
    kind = e->value;
  }
  if (kind == "wlp") {
    for (const char* k : {"sources.mu1", "sources.mu2", "sources.fraction1", "sources.fraction2"}) {
      if (entries.find(k)) {
        throw entries.error(k, "only valid with kind = decoy");
      }
    }
    WlpSourceConfig wlp{entries.real("sources.mu").value_or(0.5)};
    attribute(entries, "sources.mu", [&] { wlp.validate(); });
    cfg.source = wlp;
  } else if (kind == "decoy") {
    if (entries.find("sources.mu")) {
      throw entries.error("sources.mu", "only valid with kind = wlp (use mu1/mu2)");
    }
    const auto defaults = DecoyIntensityConfig::defaults();
    const auto f1 = entries.real("sources.fraction1");
    const auto f2 = entries.real("sources.fraction2");
    const double fraction1 = f1.value_or(f2 ? 1.0 - *f2 : defaults.fraction1());
    const double fraction2 = f2.value_or(1.0 - fraction1);
    cfg.source = attribute(
        entries, entries.first_present({"sources.fraction1", "sources.fraction2", "sources.mu1",
                                        "sources.mu2"}),
        [&] {
          return DecoyIntensityConfig(entries.real("sources.mu1").value_or(defaults.mu1()),
                                      entries.real("sources.mu2").value_or(defaults.mu2()),
                                      fraction1, fraction2);
        });
  } else {
    throw entries.error("sources.kind", fmt::format("'{}' is not one of wlp, decoy", kind));
  }

  const auto f_DA = entries.real("ee_protocol.f_DA");
  const auto f_SA = entries.real("ee_protocol.f_SA");
  const auto f_DB = entries.real("ee_protocol.f_DB");
  const auto f_SB = entries.real("ee_protocol.f_SB");
  const double da = f_DA.value_or(f_SA ? 1.0 - *f_SA : cfg.schedule.f_DA());
  const double db = f_DB.value_or(f_SB ? 1.0 - *f_SB : cfg.schedule.f_DB());
  cfg.schedule = attribute(
      entries, entries.first_present({"ee_protocol.f_SA", "ee_protocol.f_DA", "ee_protocol.f_SB",
                                      "ee_protocol.f_DB"}),
      [&] { return ModeSchedule(f_SA.value_or(1.0 - da), da, f_SB.value_or(1.0 - db), db); });

  cfg.channel.loss = entries.real("channels_adversary.loss").value_or(0.0);
  cfg.channel.dephasing = entries.real("channels_adversary.dephasing").value_or(0.0);
  if (!(cfg.channel.loss >= 0.0 && cfg.channel.loss <= 1.0)) {
    throw entries.error("channels_adversary.loss", "must lie in [0, 1]");
  }
  if (!(cfg.channel.dephasing >= 0.0 && cfg.channel.dephasing <= 0.5)) {
    throw entries.error("channels_adversary.dephasing", "must lie in [0, 0.5]");
  }

  std::string eve = "absent";
  if (const Entry* e = entries.find("channels_adversary.eve")) {
    eve = e->value;
  }
  if (eve == "absent") {
    cfg.eve.kind = EveKind::Absent;
  } else if (eve == "pns_qnd") {
    cfg.eve.kind = EveKind::PnsQnd;
  } else {
    throw entries.error("channels_adversary.eve",
                        fmt::format("'{}' is not one of absent, pns_qnd", eve));
  }
  cfg.eve.replaced_loss =
      entries.real("channels_adversary.replaced_loss").value_or(cfg.channel.loss);
  attribute(entries, "channels_adversary.replaced_loss", [&] { cfg.eve.validate(); });
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(fmt::format("cannot open config file '{}'", path.string()));
  }
  return parse_scenario(in, path.string());
}

}  // namespace qkdlab
