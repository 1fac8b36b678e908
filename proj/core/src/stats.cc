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

#include "growthscale/stats.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "growthscale/error.h"

namespace growthscale {

double Mean(std::span<const double> x) {
  if (x.empty()) throw InsufficientDataError("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double Variance(std::span<const double> x) {
  if (x.size() < 2) throw InsufficientDataError("variance needs two values");
  const double mean = Mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

double StdDev(std::span<const double> x) { return std::sqrt(Variance(x)); }

double Median(std::span<const double> x) {
  if (x.empty()) throw InsufficientDataError("median of an empty sample");
  std::vector<double> v(x.begin(), x.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

double QuantileSorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double WeightedQuantile(std::span<const double> x, std::span<const double> w,
                        double tau) {
  if (x.empty() || x.size() != w.size()) {
    throw InvalidArgument("weighted quantile: empty or mismatched input");
  }
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double target = tau * total;
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += w[i];
    if (cum >= target) return x[i];
  }
  return x[order.back()];
}

SimpleOls FitSimpleOls(std::span<const double> x, std::span<const double> y,
                       int hac_lag) {
  const std::size_t n = x.size();
  if (n != y.size()) throw InvalidArgument("OLS: x and y lengths differ");
  if (n < 3) throw InsufficientDataError("OLS needs at least three points");
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("OLS: regressor has no spread");
  SimpleOls fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.df = static_cast<int>(n) - 2;
  std::vector<double> resid(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    resid[i] = y[i] - fit.intercept - fit.slope * x[i];
    rss += resid[i] * resid[i];
  }
  fit.residual_variance = rss / fit.df;
  fit.se_slope = std::sqrt(fit.residual_variance / sxx);
  fit.se_intercept = std::sqrt(fit.residual_variance *
                               (1.0 / static_cast<double>(n) + mx * mx / sxx));
  if (hac_lag > 0) {
    // Newey-West long-run variance of (x - mx) e.
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = (x[i] - mx) * resid[i];
    double s = 0.0;
    for (double v : u) s += v * v;
    const int max_lag = std::min<int>(hac_lag, static_cast<int>(n) - 1);
    for (int l = 1; l <= max_lag; ++l) {
      const double weight = 1.0 - l / (hac_lag + 1.0);
      double g = 0.0;
      for (std::size_t i = l; i < n; ++i) g += u[i] * u[i - l];
      s += 2.0 * weight * g;
    }
    const double dof = static_cast<double>(n) / fit.df;
    fit.se_slope = std::sqrt(std::max(s, 0.0) * dof) / sxx;
  }
  return fit;
}

double NormalQuantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double NormalCdf(double x) {
  return boost::math::cdf(boost::math::normal_distribution<double>(), x);
}

double StudentTQuantile(double p, double df) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(df),
                               p);
}

bool IsSignificant(double estimate, double std_error, double level,
                   double df) {
  if (!(std_error > 0.0) || !std::isfinite(std_error)) return false;
  const double critical = df > 0.0 ? StudentTQuantile(1.0 - level / 2.0, df)
                                   : NormalQuantile(1.0 - level / 2.0);
  return std::abs(estimate / std_error) > critical;
}

void ParallelFor(int n, int jobs, const std::function<void(int)>& body) {
  if (n <= 0) return;
  const int workers = std::clamp(jobs, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) threads.emplace_back(work);
    work();
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace growthscale
