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

#include "growthscale/scaling.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <limits>
#include <random>
#include <tuple>

#include "growthscale/error.h"
#include "growthscale/optimize.h"
#include "growthscale/random.h"
#include "growthscale/stats.h"

namespace growthscale {
namespace {

// rho_tau(e) = |e| + (2 tau - 1) e, which is 2 e (tau - 1{e < 0}).
double CheckLoss(double e, double tau) {
  return std::abs(e) + (2.0 * tau - 1.0) * e;
}

double WeightedLoss(std::span<const LagPair> pairs, std::span<const double> w,
                    double alpha, double phi1, double tau) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    sum += w[i] * CheckLoss(pairs[i].growth - alpha - phi1 * pairs[i].lagged_growth,
                            tau);
  }
  return sum;
}

// Exact minimizer in alpha at fixed phi1: weighted tau-quantile of y - phi1 x.
double RecentreAlpha(std::span<const LagPair> pairs, std::span<const double> w,
                     double phi1, double tau) {
  std::vector<double> z(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    z[i] = pairs[i].growth - phi1 * pairs[i].lagged_growth;
  }
  return WeightedQuantile(z, w, tau);
}

// Iteratively reweighted least squares for sum_i w_i rho_tau(y - alpha - phi x).
// Each step minimizes the quadratic majorizer of |e| around the current
// residuals, so the (smoothed) loss never increases. The best iterate wins.
std::pair<double, double> WeightedLad(std::span<const LagPair> pairs,
                                      std::span<const double> w, double tau,
                                      double alpha, double phi1,
                                      double floor, int max_iterations) {
  double best_alpha = alpha;
  double best_phi = phi1;
  double best_loss = WeightedLoss(pairs, w, alpha, phi1, tau);
  const double lin = 2.0 * tau - 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, r0 = 0.0, r1 = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double x = pairs[i].lagged_growth;
      const double y = pairs[i].growth;
      const double e = y - alpha - phi1 * x;
      const double c = w[i] / std::max(std::abs(e), floor);
      s0 += c;
      s1 += c * x;
      s2 += c * x * x;
      r0 += c * y + lin * w[i];
      r1 += c * x * y + lin * w[i] * x;
    }
    const double det = s0 * s2 - s1 * s1;
    if (!(std::abs(det) > 0.0)) break;
    const double next_alpha = (s2 * r0 - s1 * r1) / det;
    const double next_phi = (s0 * r1 - s1 * r0) / det;
    const double change =
        std::abs(next_alpha - alpha) + std::abs(next_phi - phi1);
    alpha = next_alpha;
    phi1 = next_phi;
    const double loss = WeightedLoss(pairs, w, alpha, phi1, tau);
    if (loss < best_loss) {
      best_loss = loss;
      best_alpha = alpha;
      best_phi = phi1;
    }
    if (change < 1e-13 * (1.0 + std::abs(alpha) + std::abs(phi1))) break;
  }
  return {best_alpha, best_phi};
}

void CheckIdentified(std::span<const LagPair> pairs) {
  if (pairs.size() < 4) {
    throw InsufficientDataError("ALAD needs at least 4 lag pairs, got " +
                                std::to_string(pairs.size()));
  }
  std::vector<double> s(pairs.size());
  std::vector<double> x(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    s[i] = pairs[i].lagged_size;
    x[i] = pairs[i].lagged_growth;
  }
  if (!(StdDev(s) > 1e-12)) {
    throw InsufficientDataError("all sizes are equal: beta is not identified");
  }
  if (!(StdDev(x) > 1e-14)) {
    throw InsufficientDataError("lagged growth rates have no spread");
  }
}

}  // namespace

std::string_view ScalingMethodName(ScalingMethod method) {
  return method == ScalingMethod::kBinned ? "binned" : "alad";
}

BinnedResult BinnedBeta(std::span<const double> sizes,
                        std::span<const double> values,
                        const BinnedOptions& options) {
  if (sizes.size() != values.size()) {
    throw InvalidArgument("binned beta: sizes and values differ in length");
  }
  if (options.n_bins < 3) {
    throw InvalidArgument("binned beta needs at least 3 bins");
  }
  const std::size_t n = sizes.size();
  const auto bins = static_cast<std::size_t>(options.n_bins);
  if (n / bins < static_cast<std::size_t>(std::max(options.min_occupancy, 2))) {
    throw InsufficientDataError(
        std::to_string(n) + " observations cannot fill " +
        std::to_string(bins) + " bins of at least " +
        std::to_string(options.min_occupancy) + "; use fewer bins");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sizes[a] < sizes[b];
  });

  BinnedResult result;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < bins; ++k) {
    const std::size_t lo = k * n / bins;
    const std::size_t hi = (k + 1) * n / bins;
    std::vector<double> v;
    double size_sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      v.push_back(values[order[i]]);
      size_sum += sizes[order[i]];
    }
    BinStat stat;
    stat.bin_index = static_cast<int>(k);
    stat.count = static_cast<int>(hi - lo);
    stat.mean_size = size_sum / stat.count;
    stat.sigma = StdDev(v);
    if (!(stat.sigma > 0.0)) {
      throw InsufficientDataError("bin " + std::to_string(k) +
                                  " has zero standard deviation");
    }
    result.bins.push_back(stat);
    x.push_back(stat.mean_size);
    y.push_back(std::log(stat.sigma));
  }
  const SimpleOls ols = FitSimpleOls(x, y);
  ScalingFit& fit = result.fit;
  fit.method = ScalingMethod::kBinned;
  fit.beta = ols.slope;
  fit.intercept = ols.intercept;
  fit.se_beta = ols.se_slope;
  fit.se_intercept = ols.se_intercept;
  fit.n_obs = static_cast<int>(n);
  fit.df = ols.df;
  fit.significant_5pct = IsSignificant(fit.beta, fit.se_beta, 0.05, fit.df);
  return result;
}

BinnedResult BinnedBeta(const GrowthPanel& panel, const BinnedOptions& options) {
  const auto sizes = panel.Sizes();
  const auto rates = panel.GrowthRates();
  return BinnedBeta(sizes, rates, options);
}

std::vector<double> RescaleResiduals(const GrowthPanel& panel, double beta,
                                     Centering centering) {
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  std::map<std::string, std::pair<double, int>> by_country;
  std::map<int, std::pair<double, int>> by_year;
  for (const auto& obs : panel.observations()) {
    auto& c = by_country[obs.country];
    c.first += obs.growth_rate;
    ++c.second;
    auto& y = by_year[obs.year];
    y.first += obs.growth_rate;
    ++y.second;
  }
  std::vector<double> out;
  out.reserve(panel.observations().size());
  for (const auto& obs : panel.observations()) {
    const auto& [sum, count] = centering == Centering::kYearMean
                                   ? by_year.at(obs.year)
                                   : by_country.at(obs.country);
    out.push_back((obs.growth_rate - sum / count) / std::exp(beta * obs.size));
  }
  return out;
}

std::vector<LagPair> BuildLagPairs(const GrowthPanel& panel) {
  std::map<std::string, int> index;
  int next = 0;
  for (const auto& country : panel.countries()) index[country] = next++;
  const auto& obs = panel.observations();
  std::vector<LagPair> pairs;
  for (std::size_t i = 1; i < obs.size(); ++i) {
    const auto& prev = obs[i - 1];
    const auto& cur = obs[i];
    if (prev.country != cur.country || prev.year + 1 != cur.year) continue;
    pairs.push_back({cur.growth_rate, prev.growth_rate, prev.size,
                     index.at(cur.country), cur.year});
  }
  return pairs;
}

namespace {

std::map<int, double> MeanLaggedSizeByYear(std::span<const LagPair> pairs) {
  std::map<int, std::pair<double, int>> sums;
  for (const auto& p : pairs) {
    auto& [sum, count] = sums[p.year];
    sum += p.lagged_size;
    ++count;
  }
  std::map<int, double> out;
  for (const auto& [year, s] : sums) out[year] = s.first / s.second;
  return out;
}

}  // namespace

double AladObjective(std::span<const LagPair> pairs, const AladPoint& point,
                     double tau) {
  double sum = 0.0;
  for (const auto& p : pairs) {
    const double e = p.growth - point.alpha - point.phi1 * p.lagged_growth;
    sum += point.beta * p.lagged_size +
           CheckLoss(e, tau) * std::exp(-point.beta * p.lagged_size);
  }
  return sum;
}

AladEstimate EstimateAlad(std::span<const LagPair> pairs,
                          const AladOptions& options) {
  CheckIdentified(pairs);
  const double tau = options.tau;
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("tau must be in (0, 1)");
  const std::size_t n = pairs.size();

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = pairs[i].growth;
  const double spread = std::max(StdDev(y), 1e-12);
  const double floor = 1e-10 * spread;

  std::vector<double> w(n, 1.0);
  AladPoint point;
  {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = pairs[i].lagged_growth;
    const SimpleOls ols = FitSimpleOls(x, y);
    std::tie(point.alpha, point.phi1) =
        WeightedLad(pairs, w, tau, ols.intercept, ols.slope, floor, 200);
  }

  AladEstimate est;
  double current = AladObjective(pairs, point, tau);
  est.trace.push_back(current);
  auto accept = [&](const AladPoint& candidate) {
    const double value = AladObjective(pairs, candidate, tau);
    if (value < current) {
      point = candidate;
      current = value;
      est.trace.push_back(value);
      return true;
    }
    return false;
  };

  std::vector<double> loss(n);
  for (int round = 0; round < options.max_rounds; ++round) {
    const AladPoint before = point;

    for (std::size_t i = 0; i < n; ++i) {
      w[i] = std::exp(-point.beta * pairs[i].lagged_size);
    }
    AladPoint location = point;
    std::tie(location.alpha, location.phi1) =
        WeightedLad(pairs, w, tau, point.alpha, point.phi1, floor, 100);
    location.alpha = RecentreAlpha(pairs, w, location.phi1, tau);
    accept(location);

    for (std::size_t i = 0; i < n; ++i) {
      loss[i] = CheckLoss(
          pairs[i].growth - point.alpha - point.phi1 * pairs[i].lagged_growth,
          tau);
    }
    const auto profile = [&](double beta) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double s = pairs[i].lagged_size;
        sum += beta * s + loss[i] * std::exp(-beta * s);
      }
      return sum;
    };
    AladPoint scale = point;
    scale.beta = MinimizeConvex1d(profile, point.beta, 0.25, 1e-10).x;
    accept(scale);

    const double change = std::max({std::abs(point.alpha - before.alpha),
                                    std::abs(point.phi1 - before.phi1),
                                    std::abs(point.beta - before.beta)});
    if (change < options.tolerance) break;
  }

  if (options.polish) {
    NelderMeadOptions nm;
    nm.initial_step = {0.05 * spread, 0.02, 0.02};
    nm.f_rel_tol = 1e-13;
    nm.x_tol = 1e-10;
    nm.max_evaluations = 4000;
    const auto run = NelderMead(
        [&](std::span<const double> t) {
          return AladObjective(pairs, {t[0], t[1], t[2]}, tau);
        },
        {point.alpha, point.phi1, point.beta}, nm);
    accept({run.x[0], run.x[1], run.x[2]});
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = std::exp(-point.beta * pairs[i].lagged_size);
    }
    AladPoint centred = point;
    centred.alpha = RecentreAlpha(pairs, w, point.phi1, tau);
    accept(centred);
  }
  est.point = point;
  est.objective = current;
  return est;
}

ScalingFit FitAlad(std::span<const LagPair> pairs, int n_countries,
                   const AladOptions& options) {
  const AladEstimate est = EstimateAlad(pairs, options);

  std::vector<std::vector<LagPair>> groups(std::max(n_countries, 0));
  for (const auto& p : pairs) {
    if (p.country < 0 || p.country >= n_countries) {
      throw InvalidArgument("lag pair country index out of range");
    }
    groups[p.country].push_back(p);
  }
  std::erase_if(groups, [](const auto& g) { return g.empty(); });

  // Lagged sizes are relative to the cross-section of their year, so every
  // resample is re-centred per year to the original cross-sectional mean.
  const std::map<int, double> year_mean = MeanLaggedSizeByYear(pairs);

  AladOptions inner = options;
  inner.bootstrap = 0;
  inner.jobs = 1;
  const int reps = std::max(options.bootstrap, 0);
  std::vector<std::optional<AladPoint>> draws(reps);
  ParallelFor(reps, options.jobs, [&](int b) {
    auto gen = MakeStream(options.seed, static_cast<std::uint64_t>(b) + 1);
    std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
    std::vector<LagPair> resample;
    resample.reserve(pairs.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& group = groups[pick(gen)];
      resample.insert(resample.end(), group.begin(), group.end());
    }
    const std::map<int, double> drawn = MeanLaggedSizeByYear(resample);
    for (auto& p : resample) {
      p.lagged_size += year_mean.at(p.year) - drawn.at(p.year);
    }
    try {
      draws[b] = EstimateAlad(resample, inner).point;
    } catch (const InsufficientDataError&) {
    }
  });

  std::vector<double> alphas, phis, betas;
  for (const auto& d : draws) {
    if (!d) continue;
    alphas.push_back(d->alpha);
    phis.push_back(d->phi1);
    betas.push_back(d->beta);
  }

  ScalingFit fit;
  fit.method = ScalingMethod::kAlad;
  fit.beta = est.point.beta;
  fit.intercept = est.point.alpha;
  fit.phi1 = est.point.phi1;
  fit.n_obs = static_cast<int>(pairs.size());
  fit.objective = est.objective;
  fit.bootstrap_used = static_cast<int>(betas.size());
  if (betas.size() >= 2) {
    fit.se_beta = StdDev(betas);
    fit.se_intercept = StdDev(alphas);
    fit.se_phi1 = StdDev(phis);
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    fit.se_beta = nan;
    fit.se_intercept = nan;
    fit.se_phi1 = nan;
  }
  fit.significant_5pct = IsSignificant(fit.beta, fit.se_beta, 0.05);
  return fit;
}

ScalingFit FitAlad(const GrowthPanel& panel, const AladOptions& options) {
  const auto pairs = BuildLagPairs(panel);
  return FitAlad(pairs, static_cast<int>(panel.countries().size()), options);
}

}  // namespace growthscale
