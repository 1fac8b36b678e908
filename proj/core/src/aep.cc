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

#include "growthscale/aep.h"

#include <cmath>

#include "growthscale/error.h"
#include "growthscale/random.h"

namespace growthscale {
namespace {

bool PositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void AepParams::Validate() const {
  if (!PositiveFinite(b_l) || !PositiveFinite(b_r) || !PositiveFinite(a_l) ||
      !PositiveFinite(a_r) || !std::isfinite(m)) {
    throw InvalidArgument("AEP parameters need positive finite shapes and "
                          "scales and a finite mode");
  }
}

double SideMass(double b, double a) {
  return a * std::pow(b, 1.0 / b) * std::tgamma(1.0 + 1.0 / b);
}

double Normalization(const AepParams& params) {
  params.Validate();
  return SideMass(params.b_l, params.a_l) + SideMass(params.b_r, params.a_r);
}

double LeftMass(const AepParams& params) {
  return SideMass(params.b_l, params.a_l) / Normalization(params);
}

double RightMass(const AepParams& params) {
  return SideMass(params.b_r, params.a_r) / Normalization(params);
}

double LogDensity(double x, const AepParams& params) {
  const double log_norm = std::log(Normalization(params));
  if (x < params.m) {
    return -log_norm -
           std::pow((params.m - x) / params.a_l, params.b_l) / params.b_l;
  }
  if (x > params.m) {
    return -log_norm -
           std::pow((x - params.m) / params.a_r, params.b_r) / params.b_r;
  }
  return -log_norm;
}

double Density(double x, const AepParams& params) {
  return std::exp(LogDensity(x, params));
}

AepSampler::AepSampler(const AepParams& params)
    : params_(params),
      left_mass_(LeftMass(params)),
      left_(1.0 / params.b_l, 1.0),
      right_(1.0 / params.b_r, 1.0) {}

std::vector<double> Sample(const AepParams& params, std::size_t n,
                           std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be at least 1");
  AepSampler sampler(params);
  auto gen = MakeStream(seed, 0);
  std::vector<double> out(n);
  for (auto& x : out) x = sampler(gen);
  return out;
}

}  // namespace growthscale
