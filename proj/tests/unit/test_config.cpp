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

#include <doctest.h>

#include <sstream>
#include <string>

using namespace qkdlab;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in, "test.ini");
}

// Returns the ConfigError raised by `text`; fails the test if none is.
ConfigError parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("", 0, "", "");
}

}  // namespace

TEST_CASE("empty file yields defaults") {
  const ScenarioConfig cfg = parse("");
  CHECK(cfg.scenario_name == "default");
  CHECK(cfg.seed == 1);
  CHECK(cfg.n_slots == 100000);
  CHECK(std::holds_alternative<WlpSourceConfig>(cfg.source));
  CHECK(std::get<WlpSourceConfig>(cfg.source).mu == 0.5);
  CHECK(cfg.eve.kind == EveKind::Absent);
  CHECK(cfg.channel.loss == 0.0);
}

TEST_CASE("full scenario parses") {
  const ScenarioConfig cfg = parse(R"(# attack scenario
scenario_name = pns_half
seed = 42
n_slots = 5000   # short run
confidence = 0.95

[sources]
kind = wlp
mu = 0.3

[ee_protocol]
f_DA = 0.25
f_DB = 0.125

[channels_adversary]
loss = 0.5
dephasing = 0.1
eve = pns_qnd
)");
  CHECK(cfg.scenario_name == "pns_half");
  CHECK(cfg.seed == 42);
  CHECK(cfg.n_slots == 5000);
  CHECK(cfg.confidence == 0.95);
  CHECK(std::get<WlpSourceConfig>(cfg.source).mu == 0.3);
  CHECK(cfg.schedule.f_DA() == 0.25);
  CHECK(cfg.schedule.f_SA() == 0.75);
  CHECK(cfg.schedule.f_DB() == 0.125);
  CHECK(cfg.channel.loss == 0.5);
  CHECK(cfg.channel.dephasing == 0.1);
  CHECK(cfg.eve.kind == EveKind::PnsQnd);
  CHECK(cfg.eve.replaced_loss == 0.5);
}

TEST_CASE("decoy source section") {
  const ScenarioConfig cfg = parse("[sources]\nkind = decoy\nmu1 = 0.05\nmu2 = 0.8\nfraction2 = 0.4\n");
  const auto& d = std::get<DecoyIntensityConfig>(cfg.source);
  CHECK(d.mu1() == 0.05);
  CHECK(d.mu2() == 0.8);
  CHECK(d.fraction1() == doctest::Approx(0.6));
  const ScenarioConfig dflt = parse("[sources]\nkind = decoy\n");
  CHECK(std::get<DecoyIntensityConfig>(dflt.source).mu1() == 0.1);
  CHECK(std::get<DecoyIntensityConfig>(dflt.source).mu2() == 0.5);
}

TEST_CASE("replaced_loss may differ from the physical loss") {
  const ScenarioConfig cfg =
      parse("[channels_adversary]\nloss = 0.2\neve = pns_qnd\nreplaced_loss = 0.6\n");
  CHECK(cfg.channel.loss == 0.2);
  CHECK(cfg.eve.replaced_loss == 0.6);
}

TEST_CASE("diagnostics carry line and field") {
  SUBCASE("out-of-range value") {
    const ConfigError e = parse_error("seed = 3\n[channels_adversary]\n\nloss = 1.5\n");
    CHECK(e.line() == 4);
    CHECK(e.field() == "channels_adversary.loss");
    CHECK(std::string(e.what()).find("test.ini:4") == 0);
  }
  SUBCASE("dephasing above one half") {
    const ConfigError e = parse_error("[channels_adversary]\ndephasing = 0.6\n");
    CHECK(e.line() == 2);
    CHECK(e.field() == "channels_adversary.dephasing");
  }
  SUBCASE("not a number") {
    const ConfigError e = parse_error("[sources]\nmu = half\n");
    CHECK(e.line() == 2);
    CHECK(e.field() == "sources.mu");
  }
  SUBCASE("negative mu") {
    const ConfigError e = parse_error("[sources]\nmu = -0.1\n");
    CHECK(e.field() == "sources.mu");
  }
  SUBCASE("unknown key") {
    const ConfigError e = parse_error("[sources]\nmu = 0.5\ncolour = red\n");
    CHECK(e.line() == 3);
    CHECK(e.field() == "sources.colour");
  }
  SUBCASE("unknown section") {
    const ConfigError e = parse_error("[nowhere]\n");
    CHECK(e.line() == 1);
    CHECK(e.field() == "nowhere");
  }
  SUBCASE("duplicate key") {
    const ConfigError e = parse_error("seed = 1\nseed = 2\n");
    CHECK(e.line() == 2);
    CHECK(e.field() == "experiment_cli.seed");
  }
  SUBCASE("malformed line") {
    const ConfigError e = parse_error("seed 1\n");
    CHECK(e.line() == 1);
  }
  SUBCASE("missing value") {
    const ConfigError e = parse_error("seed =\n");
    CHECK(e.field() == "experiment_cli.seed");
  }
  SUBCASE("bad enumerations") {
    CHECK(parse_error("[sources]\nkind = laser\n").field() == "sources.kind");
    CHECK(parse_error("[channels_adversary]\neve = maybe\n").field() == "channels_adversary.eve");
  }
  SUBCASE("keys of the other source kind") {
    CHECK(parse_error("[sources]\nmu1 = 0.1\n").field() == "sources.mu1");
    CHECK(parse_error("[sources]\nkind = decoy\nmu = 0.1\n").field() == "sources.mu");
  }
  SUBCASE("frequencies outside [0, 1]") {
    CHECK(parse_error("[ee_protocol]\nf_DA = 1.2\n").line() == 2);
  }
  SUBCASE("zero slots") {
    CHECK(parse_error("n_slots = 0\n").field() == "experiment_cli.n_slots");
  }
  SUBCASE("negative seed") {
    CHECK(parse_error("seed = -4\n").field() == "experiment_cli.seed");
  }
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/scenario.ini"), IoError);
}
