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

#include "qkdlab/cli.hpp"

#include "qkdlab/ee_protocol.hpp"
#include "qkdlab/errors.hpp"
#include "qkdlab/stats.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace qkdlab::cli {
namespace {

std::string percent_tag(double d) { return fmt::format("d{:02.0f}", d * 100.0); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) {
    throw DomainError("grid needs at least one step");
  }
  if (steps > 1 && !(lo < hi)) {
    throw DomainError(fmt::format("grid bounds must satisfy min < max (got {} and {})", lo, hi));
  }
  std::vector<double> grid(steps, lo);
  for (std::size_t i = 1; i < steps; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  if (steps > 1) {
    grid.back() = hi;
  }
  return grid;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value,
                           std::uint64_t config_seed) {
  if (flag) {
    return *flag;
  }
  if (env_value != nullptr && *env_value != '\0') {
    std::uint64_t seed = 0;
    const char* end = env_value + std::strlen(env_value);
    const auto [ptr, ec] = std::from_chars(env_value, end, seed);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError("environment", 0, "QKDLAB_SEED",
                        fmt::format("'{}' is not an unsigned 64-bit integer", env_value));
    }
    return seed;
  }
  return config_seed;
}

std::string chernoff_report(double p, double q, double max_error) {
  const BernoulliHypothesisPair h(p, q);
  if (p == q) {
    throw UnreachableError(fmt::format("indistinguishable hypotheses: p = q = {}", p));
  }
  std::string out = fmt::format("p = {}\nq = {}\nmax_error = {}\n", format_real(p),
                                format_real(q), format_real(max_error));
  try {
    const DetectionPlan plan = plan_detection(h, max_error);
    out += fmt::format("chernoff_distance = {}\nxi = {}\ntrials_needed = {}\nerror_bound = {}\n",
                       format_real(plan.chernoff_distance), format_real(plan.xi),
                       *plan.trials_needed, format_real(plan.max_error));
  } catch (const PerfectlyDistinguishableError&) {
    out += fmt::format("chernoff_distance = inf\nxi = {}\ntrials_needed = {}\nerror_bound = 0\n",
                       format_real(0.5), trials_needed(h, max_error));
  }
  return out;
}

CsvTable ee_curve_table(double d_min, double d_max, std::size_t steps, double confidence) {
  if (!(d_min >= 0.0 && d_min < d_max && d_max < 0.5)) {
    throw DomainError(
        fmt::format("dephasing range needs 0 <= d_min < d_max < 0.5 (got {}, {})", d_min, d_max));
  }
  const std::vector<double> grid = linear_grid(d_min, d_max, steps);
  CsvTable table({"dephasing", "trials_needed"});
  for (const auto& [d, n] : trials_vs_dephasing_curve(grid, confidence)) {
    table.add_row({format_real(d), std::to_string(n)});
  }
  return table;
}

CsvTable decoy_curve_table(const DecoyCurveOptions& opts, bool with_high_ratio) {
  const std::vector<double> grid = linear_grid(opts.loss_min, opts.loss_max, opts.steps);
  DecoyScenario tmpl{opts.intensities, grid.front(), opts.confidence};
  const std::vector<double> levels{opts.d_low, opts.d_high};
  const auto points = comparison_curve(grid, levels, tmpl);

  std::vector<std::string> header{"loss", "pulses_decoy", "pulses_ee_" + percent_tag(opts.d_low),
                                  "pulses_ee_" + percent_tag(opts.d_high),
                                  "ratio_" + percent_tag(opts.d_low)};
  if (with_high_ratio) {
    header.push_back("ratio_" + percent_tag(opts.d_high));
  }
  CsvTable table(std::move(header));
  for (const auto& pt : points) {
    std::vector<std::string> row{format_real(pt.loss), std::to_string(pt.pulses_sent_decoy),
                                 std::to_string(pt.pulses_sent_ee[0]),
                                 std::to_string(pt.pulses_sent_ee[1]), format_real(pt.ratio[0])};
    if (with_high_ratio) {
      row.push_back(format_real(pt.ratio[1]));
    }
    table.add_row(std::move(row));
  }
  return table;
}

std::string comparison_summary(const DecoyCurveOptions& opts) {
  const std::vector<double> grid = linear_grid(opts.loss_min, opts.loss_max, opts.steps);
  DecoyScenario tmpl{opts.intensities, grid.front(), opts.confidence};
  const std::vector<double> levels{opts.d_low};
  const auto points = comparison_curve(grid, levels, tmpl);

  bool ee_cheaper_below_75 = true;
  std::optional<double> crossover;
  for (const auto& pt : points) {
    if (pt.loss < 0.75 && !(pt.pulses_sent_ee[0] < pt.pulses_sent_decoy)) {
      ee_cheaper_below_75 = false;
    }
    if (!crossover && pt.pulses_sent_decoy < pt.pulses_sent_ee[0]) {
      crossover = pt.loss;
    }
  }
  tmpl.loss = 0.5;
  const double ratio_half =
      static_cast<double>(ee_pulses_needed(opts.d_low, 0.5, opts.confidence)) /
      static_cast<double>(decoy_pulses_needed(tmpl));
  const std::string tag = percent_tag(opts.d_low);
  return fmt::format(
      "ee_{0}_cheaper_for_all_loss_below_0.75 = {1}\n"
      "decoy_cheaper_from_loss_{0} = {2}\n"
      "ratio_{0}_at_loss_0.5 = {3}\n",
      tag, yes_no(ee_cheaper_below_75), crossover ? format_real(*crossover) : "none",
      format_real(ratio_half));
}

SimulationOutput simulate(const ScenarioConfig& cfg, bool with_slot_log) {
  const ExchangeResult run = run_bb84_exchange(cfg.n_slots, cfg.source, cfg.schedule,
                                               cfg.channel, cfg.eve, cfg.seed, Exec::openmp);
  const DetectionReport report = detect_eavesdropper(run.evidence, cfg.channel, cfg.confidence);
  const ExchangeStats& st = run.stats;
  const std::uint64_t received_classes = st.received_class1 + st.received_class2;
  const double class1_share =
      received_classes > 0
          ? static_cast<double>(st.received_class1) / static_cast<double>(received_classes)
          : 0.0;

  CsvTable summary({"scenario", "seed", "n_slots", "key_slots", "decoy_slots", "wasted_slots",
                    "pulses_received", "sifted_length", "qber", "eve_known_fraction",
                    "received_class1_share", "ss", "ll", "middle_bright", "middle_dark",
                    "trials_required", "trials_used", "chernoff", "decision"});
  summary.add_row({cfg.scenario_name, std::to_string(cfg.seed), std::to_string(st.n_slots),
                   std::to_string(st.key_slots), std::to_string(st.decoy_slots),
                   std::to_string(st.wasted_slots), std::to_string(st.pulses_received),
                   std::to_string(st.sifted_length), format_real(st.qber),
                   format_real(st.eve_known_fraction), format_real(class1_share),
                   std::to_string(st.ss), std::to_string(st.ll), std::to_string(st.middle_bright),
                   std::to_string(st.middle_dark), std::to_string(report.trials_required),
                   std::to_string(report.trials_used), format_real(report.chernoff),
                   std::string(to_string(report.decision))});

  SimulationOutput out;
  out.summary_csv = summary.render();
  if (with_slot_log) {
    CsvTable log({"slot", "alice_mode", "bob_mode", "category", "detail", "alice_bit", "bob_bit",
                  "photons_sent", "split"});
    for (std::size_t i = 0; i < run.slots.size(); ++i) {
      const SlotOutcome& s = run.slots[i];
      log.add_row({std::to_string(i), std::string(to_string(s.alice_mode)),
                   std::string(to_string(s.bob_mode)), std::string(to_string(s.category)),
                   std::string(to_string(s.detail)), std::to_string(s.alice_bit),
                   std::to_string(s.bob_bit), std::to_string(s.photons_sent),
                   std::to_string(static_cast<int>(s.split))});
    }
    out.slot_log_csv = log.render();
  }
  out.console = fmt::format(
      "scenario: {}\nseed: {}\nsifted key length: {}\nQBER: {}\nEve known-bit fraction: {}\n"
      "middle-bin events used: {} of {} required\ndecision: {}\n",
      cfg.scenario_name, cfg.seed, st.sifted_length, format_real(st.qber),
      format_real(st.eve_known_fraction), report.trials_used, report.trials_required,
      to_string(report.decision));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qkdlab: BB84 under photon-number-splitting attack, EE ancilla and decoy-state analysis"};
  app.require_subcommand(1);

  double p = 0.0, q = 0.0, max_error = 0.01;
  auto* chernoff = app.add_subcommand("chernoff", "Chernoff distance and trials for two Bernoulli hypotheses");
  chernoff->add_option("--p", p, "null-hypothesis success probability")->required();
  chernoff->add_option("--q", q, "alternative-hypothesis success probability")->required();
  chernoff->add_option("--max-error", max_error, "target maximum error probability")
      ->capture_default_str();

  double d_min = 0.0, d_max = 0.49, confidence = 0.99;
  std::size_t d_steps = 50;
  std::string ee_out = "-";
  auto* ee = app.add_subcommand("ee-curve", "Trials needed versus dephasing (CSV)");
  ee->add_option("--d-min", d_min)->capture_default_str();
  ee->add_option("--d-max", d_max)->capture_default_str();
  ee->add_option("--steps", d_steps)->capture_default_str();
  ee->add_option("--confidence", confidence)->capture_default_str();
  ee->add_option("--out", ee_out, "output CSV path, '-' for stdout")->capture_default_str();

  DecoyCurveOptions decoy_opts;
  double mu1 = decoy_opts.intensities.mu1(), mu2 = decoy_opts.intensities.mu2();
  double fraction1 = decoy_opts.intensities.fraction1();
  std::optional<double> fraction2;
  std::string decoy_out = "-", decoy_config, compare_ee_out;
  auto add_decoy_options = [&](CLI::App* cmd) {
    cmd->add_option("--loss-min", decoy_opts.loss_min)->capture_default_str();
    cmd->add_option("--loss-max", decoy_opts.loss_max)->capture_default_str();
    cmd->add_option("--steps", decoy_opts.steps)->capture_default_str();
    cmd->add_option("--mu1", mu1)->capture_default_str();
    cmd->add_option("--mu2", mu2)->capture_default_str();
    cmd->add_option("--fraction1", fraction1)->capture_default_str();
    cmd->add_option("--fraction2", fraction2, "defaults to 1 - fraction1");
    cmd->add_option("--confidence", decoy_opts.confidence)->capture_default_str();
    cmd->add_option("--d-low", decoy_opts.d_low, "first EE dephasing level")->capture_default_str();
    cmd->add_option("--d-high", decoy_opts.d_high, "second EE dephasing level")->capture_default_str();
    cmd->add_option("--config", decoy_config, "scenario file supplying [sources] kind = decoy and confidence");
    cmd->add_option("--out", decoy_out, "output CSV path, '-' for stdout")->capture_default_str();
  };
  auto* decoy = app.add_subcommand("decoy-curve", "Pulses sent versus loss, decoy states vs EE (CSV)");
  add_decoy_options(decoy);
  auto* compare = app.add_subcommand("compare", "Decoy curve, EE curve and ratio table with verdicts");
  add_decoy_options(compare);
  compare->add_option("--ee-out", compare_ee_out, "also write the trials-vs-dephasing curve here");

  std::string config_path, sim_out = "-", slot_log;
  std::optional<std::uint64_t> seed_flag;
  auto* sim = app.add_subcommand("simulate", "End-to-end EE BB84 run with eavesdropper detection");
  sim->add_option("--config", config_path, "scenario file")->required();
  sim->add_option("--out", sim_out, "summary CSV path, '-' for stdout")->capture_default_str();
  sim->add_option("--slot-log", slot_log, "per-slot outcome CSV path");
  sim->add_option("--seed", seed_flag, "overrides QKDLAB_SEED and the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (chernoff->parsed()) {
      out << chernoff_report(p, q, max_error);
    } else if (ee->parsed()) {
      write_output(ee_out, ee_curve_table(d_min, d_max, d_steps, confidence).render(), out);
    } else if (decoy->parsed() || compare->parsed()) {
      CLI::App* cmd = decoy->parsed() ? decoy : compare;
      if (!decoy_config.empty()) {
        const ScenarioConfig cfg = load_scenario(decoy_config);
        if (const auto* d = std::get_if<DecoyIntensityConfig>(&cfg.source)) {
          if (cmd->count("--mu1") == 0) mu1 = d->mu1();
          if (cmd->count("--mu2") == 0) mu2 = d->mu2();
          if (cmd->count("--fraction1") == 0 && cmd->count("--fraction2") == 0) {
            fraction1 = d->fraction1();
          }
        }
        if (cmd->count("--confidence") == 0) decoy_opts.confidence = cfg.confidence;
      }
      if (fraction2 && cmd->count("--fraction1") == 0) {
        fraction1 = 1.0 - *fraction2;
      }
      decoy_opts.intensities = DecoyIntensityConfig(mu1, mu2, fraction1, fraction2.value_or(1.0 - fraction1));
      if (decoy->parsed()) {
        write_output(decoy_out, decoy_curve_table(decoy_opts).render(), out);
      } else {
        write_output(decoy_out, decoy_curve_table(decoy_opts, true).render(), out);
        if (!compare_ee_out.empty()) {
          write_output(compare_ee_out,
                       ee_curve_table(0.0, 0.49, 50, decoy_opts.confidence).render(), out);
        }
        out << comparison_summary(decoy_opts);
      }
    } else if (sim->parsed()) {
      ScenarioConfig cfg = load_scenario(config_path);
      cfg.seed = resolve_seed(seed_flag, std::getenv("QKDLAB_SEED"), cfg.seed);
      const SimulationOutput result = simulate(cfg, !slot_log.empty());
      write_output(sim_out, result.summary_csv, out);
      if (!slot_log.empty()) {
        write_output(slot_log, result.slot_log_csv, out);
      }
      if (sim_out != "-") {
        out << result.console;
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace qkdlab::cli
