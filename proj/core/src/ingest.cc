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

#include "growthscale/ingest.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "csv.h"
#include "growthscale/error.h"
#include "growthscale/serialize.h"

namespace growthscale {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

int ParseYear(const std::string& cell, const std::string& source, int line,
              int column) {
  const std::string t = internal::Trim(cell);
  int year = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
    throw DataError("malformed year '" + cell + "'", source, line, column);
  }
  return year;
}

double ParseGdppc(const std::string& cell, const std::string& source, int line,
                  int column) {
  const std::string t = internal::Trim(cell);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
    throw DataError("malformed number '" + cell + "'", source, line, column);
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DataError("non-positive gdppc '" + cell + "'", source, line, column);
  }
  return value;
}

struct Located {
  PanelObservation obs;
  int line;
  int column;
};

std::vector<PanelObservation> CheckDuplicates(std::vector<Located> records,
                                              const std::string& source) {
  std::set<CountryYear> seen;
  std::vector<PanelObservation> out;
  out.reserve(records.size());
  for (auto& r : records) {
    if (!seen.insert({r.obs.country, r.obs.year}).second) {
      throw DataError("duplicate record (" + r.obs.country + ", " +
                          std::to_string(r.obs.year) + ")",
                      source, r.line, r.column);
    }
    out.push_back(std::move(r.obs));
  }
  return out;
}

}  // namespace

std::string_view PanelKindName(PanelKind kind) {
  return kind == PanelKind::kBalanced ? "balanced" : "unbalanced";
}

std::optional<PanelKind> ParsePanelKind(std::string_view token) {
  if (token == "balanced") return PanelKind::kBalanced;
  if (token == "unbalanced") return PanelKind::kUnbalanced;
  return std::nullopt;
}

RegionMap ParseRegionMap(std::istream& in, const std::string& source) {
  const auto rows = internal::ReadCsv(in, source);
  if (rows.empty()) throw DataError("empty region map", source);
  const auto& header = rows.front().fields;
  if (header.size() < 2 || Lower(internal::Trim(header[0])) != "country" ||
      Lower(internal::Trim(header[1])) != "region") {
    throw DataError("region map header must be 'country,region'", source,
                    rows.front().line);
  }
  const bool has_flag = header.size() >= 3;
  RegionMap out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() < 2) {
      throw DataError("expected 'country,region'", source, row.line);
    }
    const std::string country = CanonicalCountryName(row.fields[0]);
    const std::string label = internal::Trim(row.fields[1]);
    const auto region = ParseRegion(label);
    if (!region) {
      throw DataError("unknown region '" + label + "'", source, row.line, 2);
    }
    RegionEntry entry{*region, std::nullopt, row.line};
    if (has_flag && row.fields.size() >= 3) {
      const std::string flag = Lower(internal::Trim(row.fields[2]));
      if (flag == "1" || flag == "true") {
        entry.balanced = true;
      } else if (flag == "0" || flag == "false") {
        entry.balanced = false;
      } else if (!flag.empty()) {
        throw DataError("balanced flag must be 0/1, got '" + flag + "'", source,
                        row.line, 3);
      }
    }
    if (!out.emplace(country, entry).second) {
      throw DataError("duplicate country '" + country + "' in region map",
                      source, row.line);
    }
  }
  return out;
}

RegionMap ValidateRegionMap(const std::filesystem::path& map_file) {
  std::ifstream in(map_file, std::ios::binary);
  if (!in) throw DataError("cannot open region map", map_file.string());
  return ParseRegionMap(in, map_file.string());
}

std::vector<PanelObservation> ReadGdpTable(std::istream& in,
                                           const std::string& source) {
  const auto rows = internal::ReadCsv(in, source);
  if (rows.empty()) throw DataError("empty data file", source);
  std::vector<std::string> header;
  for (const auto& f : rows.front().fields) header.push_back(internal::Trim(f));

  std::vector<Located> records;
  if (header.size() == 3 && Lower(header[0]) == "country" &&
      Lower(header[1]) == "year" && Lower(header[2]) == "gdppc") {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.fields.size() != 3) {
        throw DataError("expected 3 fields, got " +
                            std::to_string(row.fields.size()),
                        source, row.line);
      }
      const std::string country = CanonicalCountryName(row.fields[0]);
      if (country.empty()) {
        throw DataError("empty country name", source, row.line, 1);
      }
      records.push_back({{country, ParseYear(row.fields[1], source, row.line, 2),
                          ParseGdppc(row.fields[2], source, row.line, 3)},
                         row.line,
                         1});
    }
  } else if (!header.empty() && Lower(header[0]) == "year") {
    std::vector<std::string> countries;
    std::set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
      const std::string name = CanonicalCountryName(header[c]);
      if (name.empty()) {
        throw DataError("empty country name in header", source,
                        rows.front().line, static_cast<int>(c) + 1);
      }
      if (!seen.insert(name).second) {
        throw DataError("duplicate country column '" + name + "'", source,
                        rows.front().line, static_cast<int>(c) + 1);
      }
      countries.push_back(name);
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.fields.size() > header.size()) {
        throw DataError("more cells than header columns", source, row.line);
      }
      const int year = ParseYear(row.fields[0], source, row.line, 1);
      for (std::size_t c = 1; c < row.fields.size(); ++c) {
        if (internal::Trim(row.fields[c]).empty()) continue;
        const int column = static_cast<int>(c) + 1;
        records.push_back(
            {{countries[c - 1], year,
              ParseGdppc(row.fields[c], source, row.line, column)},
             row.line,
             column});
      }
    }
  } else {
    throw DataError(
        "unrecognized header: expected 'country,year,gdppc' or a first column "
        "'year'",
        source, rows.front().line);
  }
  return CheckDuplicates(std::move(records), source);
}

std::vector<PanelObservation> ReadGdpTable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file", path.string());
  return ReadGdpTable(in, path.string());
}

void WriteLongCsv(std::ostream& out, std::span<const PanelObservation> levels,
                  std::span<const std::string> preamble) {
  for (const auto& line : preamble) out << "# " << line << '\n';
  out << "country,year,gdppc\n";
  for (const auto& obs : levels) {
    out << internal::CsvField(obs.country) << ',' << obs.year << ','
        << FormatDouble(obs.gdppc) << '\n';
  }
}

LoadedPanel AssemblePanel(std::vector<PanelObservation> records,
                          const RegionMap& regions,
                          const DatasetManifest& manifest) {
  if (!(manifest.year_min < manifest.year_max)) {
    throw InvalidArgument("manifest year_min must be below year_max");
  }
  LoadReport report;
  std::map<std::string, std::vector<PanelObservation>> by_country;
  for (auto& r : records) {
    if (r.year < manifest.year_min || r.year > manifest.year_max) continue;
    by_country[r.country].push_back(std::move(r));
  }

  for (const auto& [country, entry] : regions) {
    if (!by_country.contains(country)) {
      report.warnings.push_back(country +
                                ": region-map entry without data, ignored");
    }
  }

  const int expected_years = manifest.year_max - manifest.year_min + 1;
  std::vector<PanelObservation> levels;
  std::map<std::string, CountryMeta> meta;
  for (auto& [country, obs] : by_country) {
    auto it = regions.find(country);
    if (it == regions.end()) {
      if (manifest.strict_names) {
        throw DataError("country '" + country +
                        "' is not in the region map (check the alias table)");
      }
      report.dropped.push_back(country + ": not in region map");
      continue;
    }
    std::sort(obs.begin(), obs.end(),
              [](const auto& a, const auto& b) { return a.year < b.year; });
    const bool member = static_cast<int>(obs.size()) == expected_years;
    if (member) ++report.balanced_members;
    if (it->second.balanced && *it->second.balanced != member) {
      report.warnings.push_back(
          country + ": balanced flag in region map is " +
          (*it->second.balanced ? "1" : "0") + " but the data say " +
          (member ? "complete" : "incomplete"));
    }
    if (manifest.panel_kind == PanelKind::kBalanced && !member) {
      report.dropped.push_back(country + ": incomplete series for balanced panel");
      continue;
    }
    bool consecutive = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
      consecutive = consecutive || obs[i].year == obs[i - 1].year + 1;
    }
    if (!consecutive) {
      report.dropped.push_back(country + ": no two consecutive years");
      continue;
    }
    meta.emplace(country, CountryMeta{country, country, it->second.region, member});
    levels.insert(levels.end(), obs.begin(), obs.end());
  }
  if (meta.empty()) {
    throw InsufficientDataError("no country left after validation");
  }
  GrowthPanel panel(std::move(levels), std::move(meta),
                    manifest.panel_kind == PanelKind::kBalanced);
  report.countries = static_cast<int>(panel.meta().size());
  report.years = panel.span();
  return {std::move(panel), std::move(report)};
}

LoadedPanel LoadPanel(const DatasetManifest& manifest) {
  if (!(manifest.year_min < manifest.year_max)) {
    throw InvalidArgument("manifest year_min must be below year_max");
  }
  auto records = ReadGdpTable(manifest.data_path);
  if (manifest.region_map_path.empty()) {
    return AssemblePanel(std::move(records), BuiltinRegionMap(), manifest);
  }
  return AssemblePanel(std::move(records),
                       ValidateRegionMap(manifest.region_map_path), manifest);
}

}  // namespace growthscale
