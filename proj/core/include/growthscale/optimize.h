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

#ifndef GROWTHSCALE_OPTIMIZE_H_
#define GROWTHSCALE_OPTIMIZE_H_

#include <functional>
#include <span>
#include <vector>

namespace growthscale {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  // Edge length of the initial simplex along each coordinate. A single value
  // is broadcast to every coordinate.
  std::vector<double> initial_step = {0.1};
  int max_evaluations = 20000;
  // Stop when (f_worst - f_best) <= f_rel_tol * max(|f_best|, 1) and the
  // largest coordinate distance from the best vertex is below x_tol.
  double f_rel_tol = 1e-9;
  double x_tol = 1e-7;
  // Restart from the best vertex with a fresh simplex until a restart no
  // longer improves the value. Guards against premature collapse.
  int max_restarts = 3;
  bool record_trace = false;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  // Best value after each iteration (record_trace only).
  std::vector<double> trace;
};

// Derivative-free simplex minimization (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Non-finite values are treated as +inf.
MinimizeResult NelderMead(const Objective& f, std::vector<double> x0,
                          const NelderMeadOptions& options = {});

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search on [lo, hi] to an interval width of `tol`.
ScalarMinimum GoldenSection(const std::function<double(double)>& f, double lo,
                            double hi, double tol = 1e-10);

// Minimizes a convex function on the real line: expands a bracket around
// `start` with initial half-width `width`, then golden-section search.
ScalarMinimum MinimizeConvex1d(const std::function<double(double)>& f,
                               double start, double width, double tol = 1e-10);

}  // namespace growthscale

#endif  // GROWTHSCALE_OPTIMIZE_H_
