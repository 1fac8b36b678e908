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

#ifndef GROWTHSCALE_AEP_FIT_H_
#define GROWTHSCALE_AEP_FIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "growthscale/aep.h"

namespace growthscale {

// Standard errors aligned with AepParams. Parameters held fixed by a
// constrained fit have zero standard error.
struct AepStdErrors {
  double b_l = 0.0;
  double b_r = 0.0;
  double a_l = 0.0;
  double a_r = 0.0;
  double m = 0.0;
};

enum class StdErrorMethod {
  kNone,
  kOuterProduct,  // inverse outer product of per-observation scores
  kBootstrap,
  kClosedForm,  // constrained Gaussian / Laplace fits
};

std::string_view StdErrorMethodName(StdErrorMethod method);

struct AepFit {
  AepParams params;
  // Present only when converged.
  std::optional<AepStdErrors> std_errors;
  StdErrorMethod se_method = StdErrorMethod::kNone;
  double log_likelihood = 0.0;
  int n_obs = 0;
  bool converged = false;
  int n_restarts_used = 0;
};

struct AepFitOptions {
  // Mode candidates: sample quantiles evenly spaced in probability.
  int profile_points = 41;
  double profile_low = 0.05;
  double profile_high = 0.95;
  // Perturbed (b_l, b_r) starts for the joint refinement, in addition to the
  // best profile point.
  bool perturbed_restarts = true;
  double f_rel_tol = 1e-9;
  double x_tol = 1e-7;
  int max_evaluations = 20000;
  // Central-difference step in internal coordinates.
  double score_step = 1e-4;
  // Used only when the score outer product is singular.
  int bootstrap_resamples = 200;
  std::uint64_t seed = 0;
  int jobs = 1;
};

inline constexpr int kMinAepObservations = 50;

// Sum of LogDensity over the sample.
double AepLogLikelihood(std::span<const double> sample, const AepParams& params);

// Maximum-likelihood fit of the five AEP parameters.
//
// The mode is first profiled over sample quantiles (the likelihood has a kink
// at every data point when a shape is below one, so it is not searched by
// gradient); the best profile point then seeds a joint simplex refinement in
// coordinates (ln a_l, ln a_r, ln b_l, ln b_r, m).
//
// Throws InsufficientDataError for fewer than kMinAepObservations values or a
// sample with no spread. A run that fails to converge from every start is
// returned with converged = false and no standard errors.
AepFit FitAep(std::span<const double> sample, const AepFitOptions& options = {});

enum class SpecialFamily { kGaussian, kLaplace };

// Constrained MLE with tied parameters. Gaussian: m = mean, a = standard
// deviation with denominator n. Laplace: m = median, a = mean absolute
// deviation from the median.
AepFit FitSpecial(std::span<const double> sample, SpecialFamily family);

}  // namespace growthscale

#endif  // GROWTHSCALE_AEP_FIT_H_
