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

#ifndef GROWTHSCALE_ROLLING_H_
#define GROWTHSCALE_ROLLING_H_

#include <optional>
#include <string>
#include <vector>

#include "growthscale/panel.h"
#include "growthscale/scaling.h"

namespace growthscale {

struct RollingOptions {
  int window_length = 10;
  int step = 1;
  // Windows with fewer lag pairs are recorded as gaps.
  int min_pairs = 24;
  AladOptions alad;
  // Windows run concurrently; each window's ALAD fit runs serially.
  int jobs = 1;
};

struct RollingEntry {
  int window_start = 0;
  int window_end = 0;
  int n_pairs = 0;
  std::optional<ScalingFit> fit;
  // Why fit is absent.
  std::string gap_reason;

  double midpoint() const { return 0.5 * (window_start + window_end); }
};

struct RollingSeries {
  int window_length = 0;
  int step = 0;
  std::vector<RollingEntry> entries;
};

// One ALAD fit per window of growth years [start, start + window_length - 1].
// Sizes are recomputed within each window. Throws InvalidArgument when the
// window is longer than the panel's growth years or step < 1.
RollingSeries Roll(const GrowthPanel& panel, const RollingOptions& options = {});

// The sub-panel a window's fit is computed on.
GrowthPanel WindowPanel(const GrowthPanel& panel, int window_start,
                        int window_length);

struct SignificanceSegment {
  int start_year = 0;  // start of the first window in the run
  int end_year = 0;    // start of the last window in the run
  bool significant = false;
};

// Maximal runs of consecutive windows whose beta shares significance status
// at `level`. Gaps count as not significant.
std::vector<SignificanceSegment> SignificanceSegments(
    const RollingSeries& series, double level = 0.05);

// First window start from which every later window has a negative beta
// significant at `level`.
std::optional<int> FirstPersistentNegativeWindow(const RollingSeries& series,
                                                 double level = 0.05);

}  // namespace growthscale

#endif  // GROWTHSCALE_ROLLING_H_
