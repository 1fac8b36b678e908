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

#ifndef GROWTHSCALE_SCALING_H_
#define GROWTHSCALE_SCALING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "growthscale/panel.h"

namespace growthscale {

// Volatility of growth rates among observations of similar size.
struct BinStat {
  int bin_index = 0;
  double mean_size = 0.0;
  double sigma = 0.0;
  int count = 0;
};

enum class ScalingMethod { kBinned, kAlad };

std::string_view ScalingMethodName(ScalingMethod method);

// Estimate of the scale relation sigma ~ exp(beta s).
struct ScalingFit {
  ScalingMethod method = ScalingMethod::kBinned;
  double beta = 0.0;
  // gamma for the binned regression, alpha for ALAD.
  double intercept = 0.0;
  // ALAD only.
  std::optional<double> phi1;

  double se_beta = 0.0;
  double se_intercept = 0.0;
  std::optional<double> se_phi1;

  // Observations (binned) or lag pairs (ALAD).
  int n_obs = 0;
  bool significant_5pct = false;

  // Degrees of freedom of the beta test; 0 for a normal reference.
  double df = 0.0;
  // ALAD only: objective at the optimum and bootstrap replicates used.
  double objective = 0.0;
  int bootstrap_used = 0;

  double t_beta() const { return beta / se_beta; }
};

struct BinnedOptions {
  int n_bins = 15;
  int min_occupancy = 30;
};

struct BinnedResult {
  ScalingFit fit;
  std::vector<BinStat> bins;
};

// Sorts observations by size into n_bins equal-occupancy bins, takes the
// standard deviation of `values` in each bin and regresses ln sigma on the
// bin mean size by OLS. Significance is a two-sided t-test at 5%.
//
// Throws InsufficientDataError when a bin would hold fewer than
// min_occupancy observations.
BinnedResult BinnedBeta(std::span<const double> sizes,
                        std::span<const double> values,
                        const BinnedOptions& options = {});

// Growth rates of `panel` against their sizes.
BinnedResult BinnedBeta(const GrowthPanel& panel,
                        const BinnedOptions& options = {});

enum class Centering {
  // Cross-sectional mean growth rate of the same year.
  kYearMean,
  // Mean growth rate of the same country over the panel.
  kCountryMean,
};

// (r - rbar) / exp(beta s) for every growth observation, in observation order.
std::vector<double> RescaleResiduals(const GrowthPanel& panel, double beta,
                                     Centering centering = Centering::kYearMean);

// (r_t, r_{t-1}, s_{t-1}) from consecutive years of one country.
struct LagPair {
  double growth = 0.0;
  double lagged_growth = 0.0;
  double lagged_size = 0.0;
  int country = 0;  // index into GrowthPanel::countries()
  int year = 0;
};

std::vector<LagPair> BuildLagPairs(const GrowthPanel& panel);

struct AladOptions {
  // Quantile of the check loss; 0.5 is the symmetric absolute deviation.
  // Other values select the asymmetric two-slope kernel.
  double tau = 0.5;
  int bootstrap = 200;
  std::uint64_t seed = 0;
  int jobs = 1;
  double tolerance = 1e-8;
  int max_rounds = 200;
  bool polish = true;
};

struct AladPoint {
  double alpha = 0.0;
  double phi1 = 0.0;
  double beta = 0.0;
};

// sum_i [ beta s_i + rho_tau(y_i - alpha - phi1 x_i) exp(-beta s_i) ] with
// rho_tau(e) = 2 e (tau - 1{e < 0}).
double AladObjective(std::span<const LagPair> pairs, const AladPoint& point,
                     double tau = 0.5);

struct AladEstimate {
  AladPoint point;
  double objective = 0.0;
  // Objective after every accepted step, starting from the initial point.
  std::vector<double> trace;
};

// Point estimate only. Alternates iteratively reweighted LAD in
// (alpha, phi1) at fixed beta with a golden-section search in beta, then
// polishes all three with a simplex and re-centres alpha on the weighted
// quantile. Throws InsufficientDataError when sizes or lagged growth rates
// have no spread.
AladEstimate EstimateAlad(std::span<const LagPair> pairs,
                          const AladOptions& options = {});

// Point estimate plus standard errors from a bootstrap over whole countries.
// Significance of beta is a two-sided normal test at 5%.
ScalingFit FitAlad(const GrowthPanel& panel, const AladOptions& options = {});
ScalingFit FitAlad(std::span<const LagPair> pairs, int n_countries,
                   const AladOptions& options = {});

}  // namespace growthscale

#endif  // GROWTHSCALE_SCALING_H_
