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

#ifndef GROWTHSCALE_SERIALIZE_H_
#define GROWTHSCALE_SERIALIZE_H_

#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "growthscale/aep.h"
#include "growthscale/aep_fit.h"
#include "growthscale/ingest.h"
#include "growthscale/rolling.h"
#include "growthscale/scaling.h"
#include "growthscale/synth.h"

namespace growthscale {

void to_json(nlohmann::json& j, const AepParams& p);
void from_json(const nlohmann::json& j, AepParams& p);
// {b_l, b_r, a_l, a_r, m, se:{...}, loglik, n, converged, ...}
void to_json(nlohmann::json& j, const AepFit& fit);
void to_json(nlohmann::json& j, const BinStat& bin);
// {method, beta, se_beta, alpha_or_gamma, phi1, n, significant_5pct, ...}
void to_json(nlohmann::json& j, const ScalingFit& fit);
// ScalingFit fields plus bins:[...]
nlohmann::json ToJson(const BinnedResult& result);
void to_json(nlohmann::json& j, const LoadReport& report);
void to_json(nlohmann::json& j, const SynthSpec& spec);
void from_json(const nlohmann::json& j, SynthSpec& spec);
void to_json(nlohmann::json& j, const RollingSeries& series);

// CSV plot data. Lines of `preamble` go first as '#' comments.
void WriteBinsCsv(std::ostream& out, std::span<const BinStat> bins,
                  std::span<const std::string> preamble = {});
// window_start, window_end, beta, se_beta, phi1, se_phi1, alpha, n,
// significant (+ window_mid, beta_lo95, beta_hi95, gap).
void WriteRollingCsv(std::ostream& out, const RollingSeries& series,
                     std::span<const std::string> preamble = {});
void WriteSegmentsCsv(std::ostream& out,
                      std::span<const SignificanceSegment> segments,
                      std::span<const std::string> preamble = {});

// Shortest representation that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace growthscale

#endif  // GROWTHSCALE_SERIALIZE_H_
