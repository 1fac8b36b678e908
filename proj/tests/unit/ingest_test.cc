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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "growthscale/error.h"
#include "growthscale/ingest.h"
#include "growthscale/synth.h"

namespace growthscale {
namespace {

namespace fs = std::filesystem;

fs::path TempFile(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "growthscale_ingest_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::vector<PanelObservation> Read(const std::string& text) {
  std::istringstream in(text);
  return ReadGdpTable(in, "test.csv");
}

TEST(ReadGdpTable, WideLayoutWithMissingCells) {
  const auto rows = Read(
      "year,France,\"Korea, Rep.\"\n"
      "1950,5186,\n"
      "1951,5461,900.5\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (PanelObservation{"France", 1950, 5186.0}));
  EXPECT_EQ(rows[1], (PanelObservation{"France", 1951, 5461.0}));
  EXPECT_EQ(rows[2], (PanelObservation{"Republic of Korea", 1951, 900.5}));
}

TEST(ReadGdpTable, QuotedHeaderAndComments) {
  const auto rows = Read(
      "\xEF\xBB\xBF# source note\n"
      "year,\"Korea, Rep.\",France\n"
      "\n"
      "1950,770,5186\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].country, "Republic of Korea");
}

TEST(ReadGdpTable, LongLayout) {
  const auto rows = Read(
      "country,year,gdppc\n"
      "France,1950,5186\n"
      "USA,1950,9561\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (PanelObservation{"United States", 1950, 9561.0}));
}

TEST(ReadGdpTable, DuplicateCountryYearIsLocated) {
  try {
    Read("country,year,gdppc\nFrance,1950,5186\nFrance,1950,5187\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 3);
    const std::string what = e.what();
    EXPECT_NE(what.find("France"), std::string::npos);
    EXPECT_NE(what.find("1950"), std::string::npos);
  }
}

TEST(ReadGdpTable, DuplicateInWideLayout) {
  EXPECT_THROW(Read("year,France,France\n1950,1,2\n"), DataError);
  EXPECT_THROW(Read("year,France\n1950,1\n1950,2\n"), DataError);
}

TEST(ReadGdpTable, MalformedNumberIsLocated) {
  try {
    Read("year,France,Italy\n1950,5186,12x\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(ReadGdpTable, NonPositiveValueRejected) {
  EXPECT_THROW(Read("year,France\n1950,0\n"), DataError);
  EXPECT_THROW(Read("year,France\n1950,-3\n"), DataError);
}

TEST(ReadGdpTable, UnknownLayoutRejected) {
  EXPECT_THROW(Read("date,France\n1950,1\n"), DataError);
}

RegionMap ParseMap(const std::string& text) {
  std::istringstream in(text);
  return ParseRegionMap(in, "map.csv");
}

TEST(RegionMap, AcceptsKnownRegion) {
  const auto map = ParseMap("country,region\nArgentina, LatinAmericaCaribbean\n");
  ASSERT_EQ(map.size(), 1u);
  EXPECT_EQ(map.at("Argentina").region, Region::kLatinAmericaCaribbean);
}

TEST(RegionMap, UnknownRegionNamesLabelAndLine) {
  try {
    ParseMap("country,region\nArgentina,LatinAmericaCaribbean\nFrance,Mars\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("Mars"), std::string::npos);
  }
}

TEST(RegionMap, DuplicateCountryRejected) {
  EXPECT_THROW(ParseMap("country,region\nFrance,EuropeNorthAmerica\n"
                        "France,EuropeNorthAmerica\n"),
               DataError);
}

TEST(RegionMap, BadHeaderRejected) {
  EXPECT_THROW(ParseMap("name,area\nFrance,EuropeNorthAmerica\n"), DataError);
}

TEST(RegionMap, BundledFileMatchesBuiltin) {
  const auto map =
      ValidateRegionMap(fs::path(GROWTHSCALE_TEST_DATA_DIR) / "regions.csv");
  const auto& builtin = BuiltinRegionMap();
  ASSERT_EQ(map.size(), builtin.size());
  for (const auto& [name, entry] : builtin) {
    ASSERT_TRUE(map.contains(name)) << name;
    EXPECT_EQ(map.at(name).region, entry.region) << name;
    EXPECT_EQ(map.at(name).balanced, entry.balanced) << name;
  }
}

TEST(RegionMap, BuiltinCoversTheTaxonomy) {
  const auto& map = BuiltinRegionMap();
  EXPECT_EQ(map.size(), 141u);
  int balanced = 0;
  std::set<Region> regions;
  for (const auto& [name, entry] : map) {
    balanced += entry.balanced.value_or(false);
    regions.insert(entry.region);
    EXPECT_EQ(CanonicalCountryName(name), name);
  }
  EXPECT_EQ(balanced, 31);
  EXPECT_EQ(regions.size(), 6u);
}

TEST(CanonicalName, AliasesResolve) {
  EXPECT_EQ(CanonicalCountryName("Korea, Rep."), "Republic of Korea");
  EXPECT_EQ(CanonicalCountryName("  France "), "France");
  for (const auto& alias : {"USA", "Russia", "Viet Nam", "Sierra Leone"}) {
    EXPECT_TRUE(BuiltinRegionMap().contains(CanonicalCountryName(alias)))
        << alias;
  }
}

// Wide table for every built-in country: balanced members complete over
// 1900-1999, the others starting at a staggered year after 1900.
std::string SyntheticWorld() {
  const auto& map = BuiltinRegionMap();
  std::vector<std::string> names;
  for (const auto& [name, entry] : map) names.push_back(name);
  std::ostringstream out;
  out << "year";
  for (const auto& n : names) {
    out << ',' << (n.find(',') != std::string::npos ? "\"" + n + "\"" : n);
  }
  out << '\n';
  for (int year = 1900; year <= 1999; ++year) {
    out << year;
    for (std::size_t c = 0; c < names.size(); ++c) {
      out << ',';
      const bool member = map.at(names[c]).balanced.value_or(false);
      const int first = member ? 1900 : 1901 + static_cast<int>(c % 60);
      if (year >= first) out << 1000.0 + 10.0 * c + 7.0 * (year - 1900);
    }
    out << '\n';
  }
  return out.str();
}

TEST(LoadPanel, BalancedExtractionYieldsStarredCountries) {
  DatasetManifest manifest;
  manifest.data_path = TempFile("world.csv", SyntheticWorld());
  manifest.panel_kind = PanelKind::kBalanced;
  const auto loaded = LoadPanel(manifest);
  std::set<std::string> starred;
  for (const auto& [name, entry] : BuiltinRegionMap()) {
    if (entry.balanced.value_or(false)) starred.insert(name);
  }
  const auto countries = loaded.panel.countries();
  EXPECT_EQ(std::set<std::string>(countries.begin(), countries.end()), starred);
  EXPECT_EQ(loaded.report.countries, 31);
  EXPECT_EQ(loaded.report.balanced_members, 31);
  EXPECT_TRUE(loaded.panel.balanced());
  EXPECT_EQ(loaded.panel.observations().size(), 31u * 99u);

  manifest.panel_kind = PanelKind::kUnbalanced;
  const auto all = LoadPanel(manifest);
  EXPECT_EQ(all.report.countries, 141);
  EXPECT_FALSE(all.panel.balanced());
}

TEST(LoadPanel, UnmappedCountryDroppedWithReport) {
  DatasetManifest manifest;
  manifest.data_path = TempFile(
      "atlantis_data.csv",
      "year,France,Atlantis\n1950,5000,10\n1951,5100,11\n1952,5200,12\n");
  manifest.year_min = 1950;
  manifest.year_max = 1952;
  const auto loaded = LoadPanel(manifest);
  EXPECT_EQ(loaded.panel.countries(), (std::vector<std::string>{"France"}));
  ASSERT_EQ(loaded.report.dropped.size(), 1u);
  EXPECT_NE(loaded.report.dropped[0].find("Atlantis"), std::string::npos);

  manifest.strict_names = true;
  EXPECT_THROW(LoadPanel(manifest), DataError);
}

TEST(LoadPanel, MapEntryWithoutDataWarns) {
  DatasetManifest manifest;
  manifest.data_path =
      TempFile("argentina.csv", "year,Argentina\n1950,5000\n1951,5100\n");
  manifest.region_map_path = TempFile(
      "atlantis_map.csv",
      "country,region\nArgentina,LatinAmericaCaribbean\n"
      "Atlantis,LatinAmericaCaribbean\n");
  manifest.year_min = 1950;
  manifest.year_max = 1951;
  const auto loaded = LoadPanel(manifest);
  EXPECT_EQ(loaded.report.countries, 1);
  bool warned = false;
  for (const auto& w : loaded.report.warnings) {
    warned = warned || w.find("Atlantis") != std::string::npos;
  }
  EXPECT_TRUE(warned);
}

TEST(LoadPanel, DuplicateFranceIsAnError) {
  DatasetManifest manifest;
  manifest.data_path = TempFile(
      "dup.csv", "country,year,gdppc\nFrance,1950,5186\nFrance,1951,5400\n"
                 "France,1950,5186\n");
  try {
    LoadPanel(manifest);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("France"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("1950"), std::string::npos);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(LoadPanel, InvalidManifestYears) {
  DatasetManifest manifest;
  manifest.data_path = TempFile("any.csv", "year,France\n1950,1\n");
  manifest.year_min = 1999;
  manifest.year_max = 1900;
  EXPECT_THROW(LoadPanel(manifest), InvalidArgument);
}

TEST(LoadPanel, MissingFileIsAnError) {
  DatasetManifest manifest;
  manifest.data_path = "/nonexistent/growthscale.csv";
  EXPECT_THROW(LoadPanel(manifest), DataError);
}

TEST(LongCsv, RoundTripPreservesPanelExactly) {
  SynthSpec spec;
  spec.country_names = {"France", "Italy", "Spain", "Portugal"};
  spec.n_countries = 4;
  spec.size_profile = {-0.5, 0.0, 0.25, 0.5};
  spec.n_years = 30;
  spec.seed = 99;
  const auto levels = GenerateLevels(spec);
  std::ostringstream first;
  WriteLongCsv(first, levels, std::vector<std::string>{"round trip"});
  const auto reread = Read(first.str());
  EXPECT_EQ(reread, levels);
  std::ostringstream second;
  WriteLongCsv(second, reread, std::vector<std::string>{"round trip"});
  EXPECT_EQ(first.str(), second.str());

  DatasetManifest manifest;
  manifest.data_path = TempFile("round.csv", first.str());
  manifest.year_min = spec.start_year - 1;
  manifest.year_max = spec.start_year + spec.n_years - 1;
  const auto a = LoadPanel(manifest);
  manifest.data_path = TempFile("round2.csv", second.str());
  const auto b = LoadPanel(manifest);
  EXPECT_EQ(a.panel, b.panel);
  // The panel holds levels ordered by country, then year.
  auto sorted = levels;
  std::ranges::sort(sorted, {}, [](const PanelObservation& o) {
    return std::pair(o.country, o.year);
  });
  EXPECT_EQ(a.panel.levels(), sorted);
}

TEST(LoadPanel, Deterministic) {
  DatasetManifest manifest;
  manifest.data_path = TempFile("world2.csv", SyntheticWorld());
  const auto a = LoadPanel(manifest);
  const auto b = LoadPanel(manifest);
  EXPECT_EQ(a.panel, b.panel);
  std::ostringstream sa, sb;
  WriteLongCsv(sa, a.panel.levels());
  WriteLongCsv(sb, b.panel.levels());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(PanelKind, Tokens) {
  EXPECT_EQ(ParsePanelKind("balanced"), PanelKind::kBalanced);
  EXPECT_EQ(ParsePanelKind(PanelKindName(PanelKind::kUnbalanced)),
            PanelKind::kUnbalanced);
  EXPECT_FALSE(ParsePanelKind("partial").has_value());
}

}  // namespace
}  // namespace growthscale
