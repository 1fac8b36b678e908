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


#ifndef GROWTHSCALE_TOOLS_COMMANDS_H_
#define GROWTHSCALE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "growthscale/ingest.h"
#include "growthscale/panel.h"
#include "growthscale/synth.h"

namespace growthscale::cli {

// Name of the data file looked up inside a data directory.
inline constexpr char kDefaultDataFile[] = "maddison_2013.csv";
inline constexpr char kDataDirVariable[] = "GROWTHSCALE_DATA_DIR";

enum class MethodChoice { kBinned, kAlad, kBoth };

struct RunConfig {
  std::string command;
  DatasetManifest manifest;
  // Growth-year ranges; empty means the whole panel.
  std::vector<YearRange> years;
  // Empty means all regions pooled.
  std::vector<Region> regions;
  std::optional<DevelopmentGroup> split;
  // Sizes of a stratum stay demeaned against the loaded panel unless
  // recomputation is requested.
  SizeScope size_scope = SizeScope::kParent;
  MethodChoice method = MethodChoice::kBoth;
  int bins = 15;
  int bootstrap = 200;
  int window = 10;
  int step = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::filesystem::path out;
};

// The resolved configuration as embedded in every output artifact.
nlohmann::json ConfigJson(const RunConfig& config);

// "A:B" with A <= B.
YearRange ParseYears(const std::string& token);

// `flag` may name a file or a directory; without it the directory comes
// from GROWTHSCALE_DATA_DIR. Throws InvalidArgument when nothing resolves.
std::filesystem::path ResolveDataPath(const std::string& flag);

// One sub-panel per combination of year range, region and split.
struct Stratum {
  std::string name;
  std::optional<YearRange> years;
  std::optional<Region> region;
  std::optional<DevelopmentGroup> split;
};

std::vector<Stratum> EnumerateStrata(const RunConfig& config);

// Years, then the development split (median over the countries in those
// years), then region.
GrowthPanel SelectStratum(const GrowthPanel& panel, const Stratum& stratum,
                          SizeScope scope);

// Each command writes its artifacts and errors.json under config.out and
// returns the process exit status: nonzero iff some stratum failed or the
// inputs could not be loaded.
int RunFit(const RunConfig& config, std::ostream& log);
int RunScale(const RunConfig& config, std::ostream& log);
int RunRoll(const RunConfig& config, std::ostream& log);

// Writes the long CSV for `spec` to `out`, with the resolved spec as a
// comment preamble.
int RunSynth(const SynthSpec& spec, const std::filesystem::path& out,
             std::ostream& log);

// Writes `content` to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace growthscale::cli

#endif  // GROWTHSCALE_TOOLS_COMMANDS_H_
