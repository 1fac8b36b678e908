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

#include "growthscale/optimize.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "growthscale/error.h"

namespace growthscale {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

// One Nelder-Mead descent from x0. Returns true on convergence.
bool Descend(const Objective& f, const std::vector<double>& x0,
             const std::vector<double>& steps, const NelderMeadOptions& opt,
             int& evaluations, MinimizeResult& best) {
  const std::size_t n = x0.size();
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  Simplex s;
  s.x.assign(n + 1, x0);
  s.f.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) s.x[i + 1][i] += steps[i];
  for (std::size_t i = 0; i <= n; ++i) s.f[i] = eval(s.x[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  bool converged = false;

  while (evaluations < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    // Stable: ties keep vertex index order so runs are reproducible.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    const std::size_t ib = order.front();
    const std::size_t iw = order.back();
    const std::size_t is = order[n - 1];
    if (opt.record_trace) best.trace.push_back(s.f[ib]);

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        spread = std::max(spread, std::abs(s.x[i][k] - s.x[ib][k]));
      }
    }
    const double fspread = s.f[iw] - s.f[ib];
    if (std::isfinite(s.f[iw]) &&
        fspread <= opt.f_rel_tol * std::max(std::abs(s.f[ib]), 1.0) &&
        spread < opt.x_tol) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == iw) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s.x[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) {
      xr[k] = centroid[k] + (centroid[k] - s.x[iw][k]);
    }
    const double fr = eval(xr);
    if (fr < s.f[ib]) {
      for (std::size_t k = 0; k < n; ++k) {
        xe[k] = centroid[k] + 2.0 * (centroid[k] - s.x[iw][k]);
      }
      const double fe = eval(xe);
      if (fe < fr) {
        s.x[iw] = xe;
        s.f[iw] = fe;
      } else {
        s.x[iw] = xr;
        s.f[iw] = fr;
      }
      continue;
    }
    if (fr < s.f[is]) {
      s.x[iw] = xr;
      s.f[iw] = fr;
      continue;
    }
    const bool outside = fr < s.f[iw];
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = outside ? centroid[k] + 0.5 * (xr[k] - centroid[k])
                      : centroid[k] + 0.5 * (s.x[iw][k] - centroid[k]);
    }
    const double fc = eval(xc);
    if (fc < std::min(fr, s.f[iw])) {
      s.x[iw] = xc;
      s.f[iw] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == ib) continue;
      for (std::size_t k = 0; k < n; ++k) {
        s.x[i][k] = s.x[ib][k] + 0.5 * (s.x[i][k] - s.x[ib][k]);
      }
      s.f[i] = eval(s.x[i]);
    }
  }

  const auto ib = static_cast<std::size_t>(
      std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
  if (s.f[ib] < best.value) {
    best.value = s.f[ib];
    best.x = s.x[ib];
  }
  return converged;
}

}  // namespace

MinimizeResult NelderMead(const Objective& f, std::vector<double> x0,
                          const NelderMeadOptions& options) {
  if (x0.empty()) throw InvalidArgument("Nelder-Mead needs a start point");
  std::vector<double> steps = options.initial_step;
  if (steps.size() == 1) steps.assign(x0.size(), steps.front());
  if (steps.size() != x0.size()) {
    throw InvalidArgument("Nelder-Mead: initial_step length mismatch");
  }

  MinimizeResult result;
  result.value = kInf;
  result.x = x0;
  int evaluations = 0;
  bool converged = Descend(f, x0, steps, options, evaluations, result);
  for (int r = 0; r < options.max_restarts && converged; ++r) {
    const double before = result.value;
    converged = Descend(f, result.x, steps, options, evaluations, result);
    if (!(result.value < before - options.f_rel_tol *
                                      std::max(std::abs(before), 1.0))) {
      break;
    }
  }
  result.evaluations = evaluations;
  result.converged = converged && std::isfinite(result.value);
  return result;
}

ScalarMinimum GoldenSection(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
  if (!(lo < hi)) throw InvalidArgument("golden section: empty interval");
  double a = lo;
  double b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

ScalarMinimum MinimizeConvex1d(const std::function<double(double)>& f,
                               double start, double width, double tol) {
  const double f0 = f(start);
  double lo = start - width;
  double hi = start + width;
  for (int i = 0; i < 60 && f(lo) < f0; ++i) lo = start - (start - lo) * 2.0;
  for (int i = 0; i < 60 && f(hi) < f0; ++i) hi = start + (hi - start) * 2.0;
  ScalarMinimum best = GoldenSection(f, lo, hi, tol);
  if (f0 < best.value) best = {start, f0};
  return best;
}

}  // namespace growthscale
