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

#ifndef GROWTHSCALE_AEP_H_
#define GROWTHSCALE_AEP_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace growthscale {

// Asymmetric exponential power density
//
//   f(x) = exp(-|(x - m) / a_l|^b_l / b_l) / A   for x < m
//   f(x) = exp(-|(x - m) / a_r|^b_r / b_r) / A   for x > m
//
// with A = a_l b_l^(1/b_l) Gamma(1 + 1/b_l) + a_r b_r^(1/b_r) Gamma(1 + 1/b_r).
// b = 2 on both sides with equal scales is the Gaussian, b = 1 the Laplace.
struct AepParams {
  double b_l = 1.0;
  double b_r = 1.0;
  double a_l = 1.0;
  double a_r = 1.0;
  double m = 0.0;

  // Throws InvalidArgument unless all shapes and scales are finite and > 0
  // and m is finite.
  void Validate() const;

  // Parameters of the reflected law x -> 2m - x.
  AepParams Mirrored() const { return {b_r, b_l, a_r, a_l, m}; }

  static AepParams Gaussian(double sigma, double mean = 0.0) {
    return {2.0, 2.0, sigma, sigma, mean};
  }
  static AepParams Laplace(double scale, double location = 0.0) {
    return {1.0, 1.0, scale, scale, location};
  }

  friend bool operator==(const AepParams&, const AepParams&) = default;
};

// Unnormalized mass of one side: a b^(1/b) Gamma(1 + 1/b).
double SideMass(double b, double a);

double Normalization(const AepParams& params);
double LeftMass(const AepParams& params);   // A_l / A
double RightMass(const AepParams& params);  // A_r / A

// At x == m both branches give -ln A.
double LogDensity(double x, const AepParams& params);
double Density(double x, const AepParams& params);

// Exact sampler: a side is chosen with probability A_l / A, then the
// distance from the mode is W = a (b G)^(1/b) with G ~ Gamma(1/b, 1).
class AepSampler {
 public:
  explicit AepSampler(const AepParams& params);

  template <class Urbg>
  double operator()(Urbg& gen) {
    if (side_(gen) < left_mass_) {
      return params_.m - params_.a_l * std::pow(params_.b_l * left_(gen),
                                                1.0 / params_.b_l);
    }
    return params_.m +
           params_.a_r * std::pow(params_.b_r * right_(gen), 1.0 / params_.b_r);
  }

  const AepParams& params() const { return params_; }

 private:
  AepParams params_;
  double left_mass_;
  std::uniform_real_distribution<double> side_{0.0, 1.0};
  std::gamma_distribution<double> left_;
  std::gamma_distribution<double> right_;
};

// n i.i.d. draws, reproducible given seed.
std::vector<double> Sample(const AepParams& params, std::size_t n,
                           std::uint64_t seed);

}  // namespace growthscale

#endif  // GROWTHSCALE_AEP_H_
