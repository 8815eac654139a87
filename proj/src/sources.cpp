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

#include "qkdlab/sources.hpp"

#include "qkdlab/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace qkdlab {
namespace {

void require_mean(double mu, const char* name) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw DomainError(fmt::format("{} = {} must be a finite nonnegative mean photon number", name, mu));
  }
}

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(fmt::format("{} = {} outside [0, 1]", name, x));
  }
}

}  // namespace

void WlpSourceConfig::validate() const { require_mean(mu, "mu"); }

DecoyIntensityConfig::DecoyIntensityConfig(double mu1, double mu2, double fraction1,
                                           double fraction2)
    : mu1_(mu1), mu2_(mu2), fraction1_(fraction1) {
  require_mean(mu1, "mu1");
  require_mean(mu2, "mu2");
  require_probability(fraction1, "fraction1");
  require_probability(fraction2, "fraction2");
  if (std::abs(fraction1 + fraction2 - 1.0) > 1e-12) {
    throw DomainError(fmt::format("fraction1 + fraction2 = {} must equal 1", fraction1 + fraction2));
  }
}

double poisson_pmf(double mu, std::uint32_t n) {
  require_mean(mu, "mu");
  double p = std::exp(-mu);
  for (std::uint32_t k = 1; k <= n; ++k) {
    p *= mu / static_cast<double>(k);
  }
  return p;
}

double multi_photon_probability(double mu) {
  return 1.0 - poisson_pmf(mu, 0) - poisson_pmf(mu, 1);
}

double nonvacuum_probability(double mu) { return 1.0 - poisson_pmf(mu, 0); }

std::uint32_t sample_poisson(double mu, RandomStream& rng) {
  require_mean(mu, "mu");
  const double u = rng.uniform();
  double pmf = std::exp(-mu);
  double cdf = pmf;
  std::uint32_t n = 0;
  while (u >= cdf) {
    ++n;
    pmf *= mu / static_cast<double>(n);
    if (pmf == 0.0) {
      break;  // remaining tail is below double resolution
    }
    cdf += pmf;
  }
  return n;
}

std::uint32_t sample_photon_number(const WlpSourceConfig& cfg, RandomStream& rng) {
  return sample_poisson(cfg.mu, rng);
}

Polarization sample_polarization(RandomStream& rng) {
  return static_cast<Polarization>(rng.below(4));
}

PulseRecord emit_signal_pulse(const WlpSourceConfig& cfg, RandomStream& rng, std::int64_t tick) {
  PulseRecord pulse;
  pulse.source_class = SourceClass::Signal;
  pulse.mean_photon_number = cfg.mu;
  pulse.polarization = sample_polarization(rng);
  pulse.photon_count = sample_photon_number(cfg, rng);
  pulse.emission_tick = tick;
  return pulse;
}

PulseRecord emit_heralded_ancilla(RandomStream& rng, std::int64_t tick) {
  PulseRecord pulse;
  pulse.source_class = SourceClass::EntangledAncilla;
  pulse.photon_count = 1;
  pulse.polarization = sample_polarization(rng);
  pulse.timebin = TimeBin::Superposed;
  pulse.coherence = 1.0;
  pulse.emission_tick = tick;
  return pulse;
}

PulseRecord emit_decoy_pulse(const DecoyIntensityConfig& cfg, RandomStream& rng, std::int64_t tick) {
  const bool first = rng.uniform() < cfg.fraction1();
  PulseRecord pulse;
  pulse.source_class = first ? SourceClass::DecoyIntensity1 : SourceClass::DecoyIntensity2;
  pulse.mean_photon_number = first ? cfg.mu1() : cfg.mu2();
  pulse.polarization = sample_polarization(rng);
  pulse.photon_count = sample_poisson(pulse.mean_photon_number, rng);
  pulse.emission_tick = tick;
  return pulse;
}

}  // namespace qkdlab
