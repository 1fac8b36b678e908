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

#include "growthscale/rolling.h"

#include <algorithm>
#include <cmath>

#include "growthscale/error.h"
#include "growthscale/stats.h"

namespace growthscale {
namespace {

YearSpan GrowthYears(const GrowthPanel& panel) {
  YearSpan years{panel.observations().front().year,
                 panel.observations().front().year};
  for (const auto& obs : panel.observations()) {
    years.first = std::min(years.first, obs.year);
    years.last = std::max(years.last, obs.year);
  }
  return years;
}

bool BetaSignificant(const RollingEntry& entry, double level) {
  return entry.fit && IsSignificant(entry.fit->beta, entry.fit->se_beta, level);
}

}  // namespace

GrowthPanel WindowPanel(const GrowthPanel& panel, int window_start,
                        int window_length) {
  return Stratify(panel, YearRange{window_start, window_start + window_length - 1},
                  SizeScope::kRecompute);
}

RollingSeries Roll(const GrowthPanel& panel, const RollingOptions& options) {
  if (options.window_length < 2) {
    throw InvalidArgument("window length must be at least 2 years");
  }
  if (options.step < 1) throw InvalidArgument("step must be at least 1 year");
  if (panel.empty()) throw InsufficientDataError("rolling on an empty panel");
  const YearSpan years = GrowthYears(panel);
  if (options.window_length > years.length()) {
    throw InvalidArgument("window of " + std::to_string(options.window_length) +
                          " years exceeds the panel's " +
                          std::to_string(years.length()) + " growth years");
  }

  RollingSeries series;
  series.window_length = options.window_length;
  series.step = options.step;
  for (int start = years.first;
       start + options.window_length - 1 <= years.last; start += options.step) {
    RollingEntry entry;
    entry.window_start = start;
    entry.window_end = start + options.window_length - 1;
    series.entries.push_back(entry);
  }

  AladOptions alad = options.alad;
  alad.jobs = 1;
  ParallelFor(static_cast<int>(series.entries.size()), options.jobs,
              [&](int i) {
                RollingEntry& entry = series.entries[i];
                try {
                  const GrowthPanel window =
                      WindowPanel(panel, entry.window_start, options.window_length);
                  const auto pairs = BuildLagPairs(window);
                  entry.n_pairs = static_cast<int>(pairs.size());
                  if (entry.n_pairs < options.min_pairs) {
                    entry.gap_reason = std::to_string(entry.n_pairs) +
                                       " lag pairs, need " +
                                       std::to_string(options.min_pairs);
                    return;
                  }
                  entry.fit = FitAlad(
                      pairs, static_cast<int>(window.countries().size()), alad);
                } catch (const InsufficientDataError& e) {
                  entry.fit.reset();
                  entry.gap_reason = e.what();
                }
              });
  return series;
}

std::vector<SignificanceSegment> SignificanceSegments(
    const RollingSeries& series, double level) {
  if (series.entries.empty()) {
    throw InvalidArgument("significance segments of an empty series");
  }
  std::vector<SignificanceSegment> out;
  for (const auto& entry : series.entries) {
    const bool sig = BetaSignificant(entry, level);
    if (!out.empty() && out.back().significant == sig) {
      out.back().end_year = entry.window_start;
    } else {
      out.push_back({entry.window_start, entry.window_start, sig});
    }
  }
  return out;
}

std::optional<int> FirstPersistentNegativeWindow(const RollingSeries& series,
                                                 double level) {
  std::optional<int> first;
  for (auto it = series.entries.rbegin(); it != series.entries.rend(); ++it) {
    if (!BetaSignificant(*it, level) || !(it->fit->beta < 0.0)) break;
    first = it->window_start;
  }
  return first;
}

}  // namespace growthscale
