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

#ifndef GROWTHSCALE_STATS_H_
#define GROWTHSCALE_STATS_H_

#include <functional>
#include <span>
#include <vector>

namespace growthscale {

double Mean(std::span<const double> x);
// Sample variance with denominator n - 1.
double Variance(std::span<const double> x);
double StdDev(std::span<const double> x);
double Median(std::span<const double> x);
// Linear interpolation between order statistics (Hyndman-Fan type 7).
// `sorted` must be ascending.
double QuantileSorted(std::span<const double> sorted, double p);

// Smallest value v with cumulative weight of {x <= v} >= tau * total.
double WeightedQuantile(std::span<const double> x, std::span<const double> w,
                        double tau);

struct SimpleOls {
  double intercept = 0.0;
  double slope = 0.0;
  double se_intercept = 0.0;
  double se_slope = 0.0;
  double residual_variance = 0.0;
  int df = 0;

  double t_slope() const { return slope / se_slope; }
};

// y = intercept + slope x with classical standard errors. When
// `hac_lag` > 0 the slope standard error is Newey-West with Bartlett
// weights up to that lag.
SimpleOls FitSimpleOls(std::span<const double> x, std::span<const double> y,
                       int hac_lag = 0);

double NormalQuantile(double p);
double NormalCdf(double x);
double StudentTQuantile(double p, double df);

// Two-sided significance of an estimate at `level`: normal reference when
// df <= 0, Student t with df degrees of freedom otherwise.
bool IsSignificant(double estimate, double std_error, double level,
                   double df = 0.0);

// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is visited
// exactly once; callers write results by index so output never depends on
// scheduling. The first exception thrown by any body is rethrown.
void ParallelFor(int n, int jobs, const std::function<void(int)>& body);

}  // namespace growthscale

#endif  // GROWTHSCALE_STATS_H_
