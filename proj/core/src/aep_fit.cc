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

#include "growthscale/aep_fit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "growthscale/error.h"
#include "growthscale/optimize.h"
#include "growthscale/random.h"
#include "growthscale/stats.h"

namespace growthscale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinShape = 0.05;
constexpr double kMaxShape = 50.0;

// Internal coordinates: (ln a_l, ln a_r, ln b_l, ln b_r, u) with
// m = location + u * scale. Location and scale come from the sample, which
// makes the search equivariant under shifts, rescaling and reflection.
struct Reference {
  double location = 0.0;
  double scale = 1.0;
};

using Internal = std::array<double, 5>;

double LogSideMass(double log_a, double b) {
  return log_a + std::log(b) / b + std::lgamma(1.0 + 1.0 / b);
}

double LogNormalization(double log_a_l, double log_a_r, double b_l,
                        double b_r) {
  const double l = LogSideMass(log_a_l, b_l);
  const double r = LogSideMass(log_a_r, b_r);
  const double hi = std::max(l, r);
  return hi + std::log(std::exp(l - hi) + std::exp(r - hi));
}

bool ShapesInRange(double b_l, double b_r) {
  return b_l >= kMinShape && b_l <= kMaxShape && b_r >= kMinShape &&
         b_r <= kMaxShape;
}

AepParams ToParams(std::span<const double> t, const Reference& ref) {
  return {std::exp(t[2]), std::exp(t[3]), std::exp(t[0]), std::exp(t[1]),
          ref.location + t[4] * ref.scale};
}

// Negative log-likelihood over all five internal coordinates.
double JointNll(std::span<const double> x, std::span<const double> t,
                const Reference& ref) {
  const double b_l = std::exp(t[2]);
  const double b_r = std::exp(t[3]);
  if (!ShapesInRange(b_l, b_r)) return kInf;
  const double m = ref.location + t[4] * ref.scale;
  double sum_l = 0.0;
  double sum_r = 0.0;
  for (double v : x) {
    const double d = v - m;
    if (d < 0.0) {
      sum_l += std::exp(b_l * (std::log(-d) - t[0]));
    } else if (d > 0.0) {
      sum_r += std::exp(b_r * (std::log(d) - t[1]));
    }
  }
  return static_cast<double>(x.size()) *
             LogNormalization(t[0], t[1], b_l, b_r) +
         sum_l / b_l + sum_r / b_r;
}

// Likelihood with the mode held fixed; logs of the distances are cached.
class ProfileNll {
 public:
  ProfileNll(std::span<const double> x, double m) : n_(x.size()) {
    for (double v : x) {
      if (v < m) {
        left_.push_back(std::log(m - v));
      } else if (v > m) {
        right_.push_back(std::log(v - m));
      }
    }
  }

  // t = (ln a_l, ln a_r, ln b_l, ln b_r)
  double operator()(std::span<const double> t) const {
    const double b_l = std::exp(t[2]);
    const double b_r = std::exp(t[3]);
    if (!ShapesInRange(b_l, b_r)) return kInf;
    double sum_l = 0.0;
    for (double l : left_) sum_l += std::exp(b_l * (l - t[0]));
    double sum_r = 0.0;
    for (double r : right_) sum_r += std::exp(b_r * (r - t[1]));
    return static_cast<double>(n_) * LogNormalization(t[0], t[1], b_l, b_r) +
           sum_l / b_l + sum_r / b_r;
  }

  // Laplace-like starting scales: mean distance on each side.
  std::array<double, 4> Seed(double fallback_scale) const {
    auto side = [&](const std::vector<double>& logs) {
      if (logs.empty()) return std::log(fallback_scale);
      double s = 0.0;
      for (double l : logs) s += std::exp(l);
      return std::log(s / static_cast<double>(logs.size()));
    };
    return {side(left_), side(right_), 0.0, 0.0};
  }

 private:
  std::size_t n_;
  std::vector<double> left_;
  std::vector<double> right_;
};

double PointLogDensity(double v, std::span<const double> t,
                       const Reference& ref) {
  const double b_l = std::exp(t[2]);
  const double b_r = std::exp(t[3]);
  const double m = ref.location + t[4] * ref.scale;
  double out = -LogNormalization(t[0], t[1], b_l, b_r);
  const double d = v - m;
  if (d < 0.0) {
    out -= std::exp(b_l * (std::log(-d) - t[0])) / b_l;
  } else if (d > 0.0) {
    out -= std::exp(b_r * (std::log(d) - t[1])) / b_r;
  }
  return out;
}

// Covariance of the natural parameters from the inverse outer product of
// per-observation scores (central differences in internal coordinates).
std::optional<AepStdErrors> OuterProductErrors(std::span<const double> x,
                                               const Internal& theta,
                                               const Reference& ref,
                                               double step) {
  Eigen::Matrix<double, 5, 5> info = Eigen::Matrix<double, 5, 5>::Zero();
  Eigen::Matrix<double, 5, 1> score;
  Internal up = theta;
  Internal down = theta;
  for (double v : x) {
    for (int k = 0; k < 5; ++k) {
      up[k] = theta[k] + step;
      down[k] = theta[k] - step;
      score(k) = (PointLogDensity(v, up, ref) - PointLogDensity(v, down, ref)) /
                 (2.0 * step);
      up[k] = theta[k];
      down[k] = theta[k];
    }
    info.noalias() += score * score.transpose();
  }
  Eigen::LLT<Eigen::Matrix<double, 5, 5>> llt(info);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const Eigen::Matrix<double, 5, 5> cov =
      llt.solve(Eigen::Matrix<double, 5, 5>::Identity());
  // Delta method: d(natural)/d(internal) is diagonal.
  const AepParams p = ToParams(theta, ref);
  const std::array<double, 5> jac = {p.a_l, p.a_r, p.b_l, p.b_r, ref.scale};
  std::array<double, 5> se{};
  for (int k = 0; k < 5; ++k) {
    const double var = cov(k, k);
    if (!(var > 0.0) || !std::isfinite(var)) return std::nullopt;
    se[k] = jac[k] * std::sqrt(var);
  }
  return AepStdErrors{se[2], se[3], se[0], se[1], se[4]};
}

struct PointFit {
  Internal theta{};
  double nll = kInf;
  bool converged = false;
  int restarts = 0;
};

PointFit FitPoint(std::span<const double> x, const Reference& ref,
                  const AepFitOptions& options) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());

  NelderMeadOptions nm;
  nm.initial_step = {0.1};
  nm.f_rel_tol = options.f_rel_tol;
  nm.x_tol = options.x_tol;
  nm.max_evaluations = options.max_evaluations;

  // Profile the mode over sample quantiles.
  const int points = std::max(1, options.profile_points);
  PointFit best;
  for (int k = 0; k < points; ++k) {
    const double p =
        points == 1 ? 0.5
                    : options.profile_low + (options.profile_high -
                                             options.profile_low) *
                                                k / (points - 1);
    const double m = QuantileSorted(sorted, p);
    const ProfileNll profile(x, m);
    const auto seed = profile.Seed(ref.scale);
    const auto run = NelderMead(
        [&](std::span<const double> t) { return profile(t); },
        {seed.begin(), seed.end()}, nm);
    if (run.value < best.nll) {
      best.nll = run.value;
      best.theta = {run.x[0], run.x[1], run.x[2], run.x[3],
                    (m - ref.location) / ref.scale};
    }
  }
  if (!std::isfinite(best.nll)) return best;

  // Joint refinement from the best profile point and perturbed shapes.
  std::vector<Internal> starts = {best.theta};
  if (options.perturbed_restarts) {
    for (double bl : {0.7, 1.5}) {
      for (double br : {0.7, 1.5}) {
        Internal s = best.theta;
        s[2] = std::log(bl);
        s[3] = std::log(br);
        starts.push_back(s);
      }
    }
  }
  NelderMeadOptions joint = nm;
  joint.initial_step = {0.1, 0.1, 0.1, 0.1, 0.05};
  const auto nll = [&](std::span<const double> t) {
    return JointNll(x, t, ref);
  };

  std::vector<MinimizeResult> runs(starts.size());
  ParallelFor(static_cast<int>(starts.size()), options.jobs, [&](int i) {
    runs[i] = NelderMead(nll, {starts[i].begin(), starts[i].end()}, joint);
  });
  PointFit out;
  out.restarts = static_cast<int>(starts.size()) - 1;
  for (const auto& run : runs) {
    if (run.value < out.nll) {
      out.nll = run.value;
      std::copy(run.x.begin(), run.x.end(), out.theta.begin());
      out.converged = run.converged;
    }
  }
  if (!out.converged) return out;

  // Polish at tight tolerance; the mode is then refined separately from the
  // smooth coordinates so that it settles on its kink exactly.
  NelderMeadOptions fine = joint;
  fine.initial_step = {0.01, 0.01, 0.01, 0.01, 0.005};
  fine.f_rel_tol = 1e-15;
  fine.x_tol = 1e-11;
  const auto polished =
      NelderMead(nll, {out.theta.begin(), out.theta.end()}, fine);
  if (polished.value <= out.nll) {
    out.nll = polished.value;
    std::copy(polished.x.begin(), polished.x.end(), out.theta.begin());
  }
  const double m = ref.location + out.theta[4] * ref.scale;
  const ProfileNll profile(x, m);
  NelderMeadOptions smooth = fine;
  smooth.initial_step = {0.01};
  const auto shaped = NelderMead(
      [&](std::span<const double> t) { return profile(t); },
      {out.theta.begin(), out.theta.begin() + 4}, smooth);
  if (shaped.value <= out.nll) {
    out.nll = shaped.value;
    std::copy(shaped.x.begin(), shaped.x.end(), out.theta.begin());
  }
  return out;
}

Reference MakeReference(std::span<const double> x) {
  Reference ref;
  ref.location = Median(x);
  double mad = 0.0;
  for (double v : x) mad += std::abs(v - ref.location);
  ref.scale = mad / static_cast<double>(x.size());
  if (!(ref.scale > 0.0)) {
    throw InsufficientDataError("AEP fit: sample has no spread");
  }
  return ref;
}

std::optional<AepStdErrors> BootstrapErrors(std::span<const double> x,
                                            const AepFitOptions& options) {
  const int resamples = options.bootstrap_resamples;
  if (resamples < 2) return std::nullopt;
  AepFitOptions inner = options;
  inner.jobs = 1;
  std::vector<std::optional<AepParams>> draws(resamples);
  ParallelFor(resamples, options.jobs, [&](int b) {
    auto gen = MakeStream(options.seed, static_cast<std::uint64_t>(b) + 1);
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    std::vector<double> resample(x.size());
    for (auto& v : resample) v = x[pick(gen)];
    try {
      const Reference ref = MakeReference(resample);
      const PointFit fit = FitPoint(resample, ref, inner);
      if (fit.converged) draws[b] = ToParams(fit.theta, ref);
    } catch (const InsufficientDataError&) {
    }
  });
  std::array<std::vector<double>, 5> columns;
  for (const auto& d : draws) {
    if (!d) continue;
    columns[0].push_back(d->b_l);
    columns[1].push_back(d->b_r);
    columns[2].push_back(d->a_l);
    columns[3].push_back(d->a_r);
    columns[4].push_back(d->m);
  }
  if (columns[0].size() < 2) return std::nullopt;
  return AepStdErrors{StdDev(columns[0]), StdDev(columns[1]),
                      StdDev(columns[2]), StdDev(columns[3]),
                      StdDev(columns[4])};
}

}  // namespace

std::string_view StdErrorMethodName(StdErrorMethod method) {
  switch (method) {
    case StdErrorMethod::kNone:
      return "none";
    case StdErrorMethod::kOuterProduct:
      return "outer_product";
    case StdErrorMethod::kBootstrap:
      return "bootstrap";
    case StdErrorMethod::kClosedForm:
      return "closed_form";
  }
  return "none";
}

double AepLogLikelihood(std::span<const double> sample,
                        const AepParams& params) {
  double sum = 0.0;
  for (double v : sample) sum += LogDensity(v, params);
  return sum;
}

AepFit FitAep(std::span<const double> sample, const AepFitOptions& options) {
  if (static_cast<int>(sample.size()) < kMinAepObservations) {
    throw InsufficientDataError(
        "AEP fit needs at least " + std::to_string(kMinAepObservations) +
        " observations, got " + std::to_string(sample.size()));
  }
  for (double v : sample) {
    if (!std::isfinite(v)) throw InvalidArgument("AEP fit: non-finite value");
  }
  const Reference ref = MakeReference(sample);
  const PointFit point = FitPoint(sample, ref, options);

  AepFit fit;
  fit.n_obs = static_cast<int>(sample.size());
  fit.n_restarts_used = point.restarts;
  if (!std::isfinite(point.nll)) {
    fit.converged = false;
    fit.params = {1.0, 1.0, ref.scale, ref.scale, ref.location};
    fit.log_likelihood = AepLogLikelihood(sample, fit.params);
    return fit;
  }
  fit.params = ToParams(point.theta, ref);
  fit.log_likelihood = AepLogLikelihood(sample, fit.params);
  fit.converged = point.converged;
  if (fit.converged) {
    fit.std_errors =
        OuterProductErrors(sample, point.theta, ref, options.score_step);
    fit.se_method = StdErrorMethod::kOuterProduct;
    if (!fit.std_errors) {
      fit.std_errors = BootstrapErrors(sample, options);
      fit.se_method = fit.std_errors ? StdErrorMethod::kBootstrap
                                     : StdErrorMethod::kNone;
    }
  }
  return fit;
}

AepFit FitSpecial(std::span<const double> sample, SpecialFamily family) {
  if (sample.size() < 2) {
    throw InsufficientDataError("constrained fit needs at least 2 observations");
  }
  const double n = static_cast<double>(sample.size());
  AepFit fit;
  fit.n_obs = static_cast<int>(sample.size());
  fit.converged = true;
  fit.se_method = StdErrorMethod::kClosedForm;
  if (family == SpecialFamily::kGaussian) {
    const double mean = Mean(sample);
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / n);
    if (!(sigma > 0.0)) throw InsufficientDataError("sample has no spread");
    fit.params = AepParams::Gaussian(sigma, mean);
    const double se_a = sigma / std::sqrt(2.0 * n);
    fit.std_errors = AepStdErrors{0.0, 0.0, se_a, se_a, sigma / std::sqrt(n)};
  } else {
    const double median = Median(sample);
    double sad = 0.0;
    for (double v : sample) sad += std::abs(v - median);
    const double scale = sad / n;
    if (!(scale > 0.0)) throw InsufficientDataError("sample has no spread");
    fit.params = AepParams::Laplace(scale, median);
    const double se = scale / std::sqrt(n);
    fit.std_errors = AepStdErrors{0.0, 0.0, se, se, se};
  }
  fit.log_likelihood = AepLogLikelihood(sample, fit.params);
  return fit;
}

}  // namespace growthscale
