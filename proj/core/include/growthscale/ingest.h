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

#ifndef GROWTHSCALE_INGEST_H_
#define GROWTHSCALE_INGEST_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "growthscale/panel.h"

namespace growthscale {

enum class PanelKind { kBalanced, kUnbalanced };

std::string_view PanelKindName(PanelKind kind);
std::optional<PanelKind> ParsePanelKind(std::string_view token);

struct DatasetManifest {
  std::filesystem::path data_path;
  // Empty selects the built-in region map.
  std::filesystem::path region_map_path;
  // Level years retained; balanced membership means a record in every one.
  int year_min = 1900;
  int year_max = 1999;
  PanelKind panel_kind = PanelKind::kUnbalanced;
  // Fail on countries missing from the region map instead of dropping them.
  bool strict_names = false;
};

struct RegionEntry {
  Region region = Region::kEuropeNorthAmerica;
  // Optional reference flag from the map's third column.
  std::optional<bool> balanced;
  int line = 0;
};

// Keyed by canonical country name.
using RegionMap = std::map<std::string, RegionEntry>;

struct LoadReport {
  int countries = 0;
  YearSpan years;
  // "<country>: <reason>" for every country or record left out.
  std::vector<std::string> dropped;
  int balanced_members = 0;
  // Region-map entries without data and other non-fatal findings.
  std::vector<std::string> warnings;
};

struct LoadedPanel {
  GrowthPanel panel;
  LoadReport report;
};

// Canonical spelling for known aliases ("Korea, Rep." -> "Republic of
// Korea"); other names are returned trimmed but otherwise unchanged.
std::string CanonicalCountryName(std::string_view name);

// The 141-country, six-region listing with balanced-panel flags.
const RegionMap& BuiltinRegionMap();

// Parses a "country,region[,balanced]" CSV. Throws DataError naming the
// label and line for an unknown region, and for duplicate countries.
RegionMap ValidateRegionMap(const std::filesystem::path& map_file);
RegionMap ParseRegionMap(std::istream& in, const std::string& source);

// GDP-per-capita tables. The wide layout has a first column "year" and one
// column per country, empty cells meaning missing; the long layout has the
// header "country,year,gdppc". Lines starting with '#' are comments.
// Country names are canonicalized. Throws DataError with row and column for
// malformed numbers and duplicate country-years.
std::vector<PanelObservation> ReadGdpTable(std::istream& in,
                                           const std::string& source);
std::vector<PanelObservation> ReadGdpTable(const std::filesystem::path& path);

// Long layout; values written in shortest round-trip form. `preamble`
// lines are emitted as '#' comments before the header.
void WriteLongCsv(std::ostream& out, std::span<const PanelObservation> levels,
                  std::span<const std::string> preamble = {});

// Reads, validates and assembles the panel described by `manifest`.
LoadedPanel LoadPanel(const DatasetManifest& manifest);

// Same, from records already in memory.
LoadedPanel AssemblePanel(std::vector<PanelObservation> records,
                          const RegionMap& regions,
                          const DatasetManifest& manifest);

}  // namespace growthscale

#endif  // GROWTHSCALE_INGEST_H_
