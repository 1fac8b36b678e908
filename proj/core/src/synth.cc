// Copyright 2026 The growthscale Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "growthscale/synth.h"

#include <cmath>
#include <cstdio>
#include <map>

#include "growthscale/error.h"
#include "growthscale/ingest.h"
#include "growthscale/random.h"

namespace growthscale {

void SynthSpec::Validate() const {
  if (n_countries < 2) throw InvalidArgument("synth needs at least 2 countries");
  if (n_years < 1) throw InvalidArgument("synth needs at least 1 year");
  if (burn_in < 0) throw InvalidArgument("burn-in must be non-negative");
  if (!(std::abs(phi1) < 1.0)) {
    throw InvalidArgument("|phi1| must be < 1 for a stationary process");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidArgument("alpha and beta must be finite");
  }
  shock.Validate();
  if (shock.m != 0.0) throw InvalidArgument("shock mode must be 0");
  if (!size_profile.empty() &&
      static_cast<int>(size_profile.size()) != n_countries) {
    throw InvalidArgument("size_profile needs one entry per country");
  }
  if (!country_names.empty() &&
      static_cast<int>(country_names.size()) != n_countries) {
    throw InvalidArgument("country_names needs one entry per country");
  }
}

std::vector<double> SynthSpec::ResolvedSizeProfile() const {
  if (!size_profile.empty()) return size_profile;
  std::vector<double> out(n_countries);
  for (int i = 0; i < n_countries; ++i) {
    out[i] = -1.5 + 3.0 * i / (n_countries - 1);
  }
  return out;
}

std::vector<std::string> SynthSpec::ResolvedCountryNames() const {
  if (!country_names.empty()) return country_names;
  std::vector<std::string> out(n_countries);
  for (int i = 0; i < n_countries; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "C%02d", i + 1);
    out[i] = buf;
  }
  return out;
}

std::vector<PanelObservation> GenerateLevels(const SynthSpec& spec) {
  spec.Validate();
  const int n = spec.n_countries;
  const auto profile = spec.ResolvedSizeProfile();
  const auto names = spec.ResolvedCountryNames();

  double profile_mean = 0.0;
  for (double v : profile) profile_mean += v;
  profile_mean /= n;
  std::vector<double> fixed_size(n);
  for (int i = 0; i < n; ++i) fixed_size[i] = profile[i] - profile_mean;

  std::vector<std::mt19937_64> streams;
  std::vector<AepSampler> shocks;
  streams.reserve(n);
  shocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    streams.push_back(MakeStream(spec.seed, static_cast<std::uint64_t>(i)));
    shocks.emplace_back(spec.shock);
  }
  auto draw = [&](int i, double size) {
    return spec.alpha + std::exp(spec.beta * size) * shocks[i](streams[i]);
  };

  // Burn-in of the growth recursion at the initial sizes.
  std::vector<double> r(n, spec.alpha / (1.0 - spec.phi1));
  for (int t = 0; t < spec.burn_in; ++t) {
    for (int i = 0; i < n; ++i) r[i] = spec.phi1 * r[i] + draw(i, fixed_size[i]);
  }

  std::vector<std::vector<double>> log_level(
      n, std::vector<double>(spec.n_years + 1));
  for (int i = 0; i < n; ++i) log_level[i][0] = spec.base_log_gdppc + profile[i];
  for (int t = 1; t <= spec.n_years; ++t) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += log_level[i][t - 1];
    mean /= n;
    for (int i = 0; i < n; ++i) {
      const double size = spec.size_mode == SizeMode::kEndogenous
                              ? log_level[i][t - 1] - mean
                              : fixed_size[i];
      r[i] = spec.phi1 * r[i] + draw(i, size);
      log_level[i][t] = log_level[i][t - 1] + r[i];
    }
  }

  std::vector<PanelObservation> out;
  out.reserve(static_cast<std::size_t>(n) * (spec.n_years + 1));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t <= spec.n_years; ++t) {
      out.push_back({names[i], spec.start_year - 1 + t,
                     std::exp(log_level[i][t])});
    }
  }
  return out;
}

GrowthPanel Generate(const SynthSpec& spec) {
  auto levels = GenerateLevels(spec);
  const RegionMap& builtin = BuiltinRegionMap();
  std::map<std::string, CountryMeta> meta;
  int rotation = 0;
  for (const auto& name : spec.ResolvedCountryNames()) {
    CountryMeta m;
    m.id = name;
    m.name = name;
    auto it = builtin.find(name);
    m.region = it != builtin.end()
                   ? it->second.region
                   : kAllRegions[rotation++ % kAllRegions.size()];
    m.balanced_member = true;
    meta.emplace(name, m);
  }
  return GrowthPanel(std::move(levels), std::move(meta), true);
}

}  // namespace growthscale
