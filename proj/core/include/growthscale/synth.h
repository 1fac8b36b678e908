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

#ifndef GROWTHSCALE_SYNTH_H_
#define GROWTHSCALE_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "growthscale/aep.h"
#include "growthscale/panel.h"

namespace growthscale {

enum class SizeMode {
  // s_{t-1} is the realized demeaned log level of the previous year.
  kEndogenous,
  // s_{t-1} is the country's demeaned size_profile entry in every year.
  kFixed,
};

// Generative heteroskedastic AR(1):
//   r_t = alpha + phi1 r_{t-1} + exp(beta s_{t-1}) eps_t,  eps ~ shock.
struct SynthSpec {
  int n_countries = 31;
  // Growth years; levels cover start_year - 1 .. start_year + n_years - 1.
  int n_years = 50;
  int start_year = 1950;
  double alpha = 0.02;
  double phi1 = 0.35;
  double beta = -0.2;
  AepParams shock = AepParams::Laplace(0.03);
  // Initial log-size offset per country; empty means evenly spaced on
  // [-1.5, 1.5].
  std::vector<double> size_profile;
  // Country identifiers; empty means "C01", "C02", ...
  std::vector<std::string> country_names;
  double base_log_gdppc = 8.5;
  int burn_in = 50;
  SizeMode size_mode = SizeMode::kEndogenous;
  std::uint64_t seed = 1;

  // Throws InvalidArgument for |phi1| >= 1, a shock with nonzero mode,
  // non-positive counts, or mismatched profile / name lengths.
  void Validate() const;

  std::vector<double> ResolvedSizeProfile() const;
  std::vector<std::string> ResolvedCountryNames() const;
};

// Level records of the generated panel, ordered by (country, year).
std::vector<PanelObservation> GenerateLevels(const SynthSpec& spec);

// Generated panel; sizes are recomputed from the generated levels. Countries
// whose names appear in the built-in region map get that region, the rest
// are assigned regions in rotation.
GrowthPanel Generate(const SynthSpec& spec);

}  // namespace growthscale

#endif  // GROWTHSCALE_SYNTH_H_
