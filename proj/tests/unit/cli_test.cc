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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.h"
#include "growthscale/error.h"

namespace growthscale::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kDataDir = GROWTHSCALE_TEST_DATA_DIR;

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("growthscale_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig ToyConfig(const fs::path& out) {
  RunConfig config;
  config.manifest.data_path = kDataDir / "toy_balanced.csv";
  config.manifest.panel_kind = PanelKind::kBalanced;
  config.years = {{1950, 1999}};
  config.bootstrap = 20;
  config.seed = 5;
  config.out = out;
  return config;
}

TEST(ParseYears, Ranges) {
  const YearRange r = ParseYears("1950:1999");
  EXPECT_EQ(r.first, 1950);
  EXPECT_EQ(r.last, 1999);
  EXPECT_THROW(ParseYears("1999:1950"), InvalidArgument);
  EXPECT_THROW(ParseYears("1950"), InvalidArgument);
  EXPECT_THROW(ParseYears("a:b"), InvalidArgument);
}

TEST(ResolveDataPath, FlagThenEnvironment) {
  const fs::path file = kDataDir / "toy_balanced.csv";
  EXPECT_EQ(ResolveDataPath(file.string()), file);
  const fs::path dir = FreshDir("resolve");
  std::ofstream(dir / kDefaultDataFile) << "country,year,gdppc\n";
  EXPECT_EQ(ResolveDataPath(dir.string()), dir / kDefaultDataFile);
  ::setenv(kDataDirVariable, dir.c_str(), 1);
  EXPECT_EQ(ResolveDataPath(""), dir / kDefaultDataFile);
  ::unsetenv(kDataDirVariable);
  EXPECT_THROW(ResolveDataPath(""), InvalidArgument);
  EXPECT_THROW(ResolveDataPath((dir / "missing.csv").string()),
               InvalidArgument);
}

TEST(EnumerateStrata, CrossProductNames) {
  RunConfig config;
  config.manifest.panel_kind = PanelKind::kBalanced;
  EXPECT_EQ(EnumerateStrata(config).front().name, "balanced_all");
  config.years = {{1950, 1999}, {1900, 1949}};
  config.regions = {Region::kEuropeNorthAmerica};
  config.split = DevelopmentGroup::kDeveloped;
  const auto strata = EnumerateStrata(config);
  ASSERT_EQ(strata.size(), 2u);
  EXPECT_EQ(strata[0].name.rfind("balanced_1950-1999_", 0), 0u);
  EXPECT_NE(strata[0].name.find("developed"), std::string::npos);
  EXPECT_EQ(strata[1].years->first, 1900);
}

TEST(RunSynth, ByteDeterministic) {
  const fs::path dir = FreshDir("synth");
  SynthSpec spec;
  spec.n_countries = 4;
  spec.n_years = 8;
  spec.seed = 42;
  std::ostringstream log;
  ASSERT_EQ(RunSynth(spec, dir / "a.csv", log), 0);
  ASSERT_EQ(RunSynth(spec, dir / "b.csv", log), 0);
  EXPECT_EQ(Slurp(dir / "a.csv"), Slurp(dir / "b.csv"));
  EXPECT_NE(Slurp(dir / "a.csv").find("C04,1957,"), std::string::npos);
  spec.phi1 = 1.0;
  EXPECT_THROW(RunSynth(spec, dir / "c.csv", log), InvalidArgument);
  EXPECT_FALSE(fs::exists(dir / "c.csv"));
}

TEST(WriteFileAtomic, ReplacesWithoutLeftovers) {
  const fs::path dir = FreshDir("atomic");
  WriteFileAtomic(dir / "f.txt", "one");
  WriteFileAtomic(dir / "f.txt", "two");
  EXPECT_EQ(Slurp(dir / "f.txt"), "two");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1);
}

TEST(RunFit, ToyPanelArtifacts) {
  const fs::path dir = FreshDir("fit");
  std::ostringstream log;
  ASSERT_EQ(RunFit(ToyConfig(dir), log), 0) << log.str();
  const json doc = json::parse(Slurp(dir / "fit_balanced_1950-1999.json"));
  const json& fit = doc.at("fit");
  EXPECT_TRUE(fit.at("converged").get<bool>());
  EXPECT_EQ(fit.at("n"), 31 * 50);
  EXPECT_GT(fit.at("b_r").get<double>(), fit.at("b_l").get<double>());
  EXPECT_TRUE(fs::exists(dir / "density_balanced_1950-1999.csv"));
  EXPECT_TRUE(fs::exists(dir / "curve_balanced_1950-1999.csv"));
  EXPECT_TRUE(fs::exists(dir / "fit_table.csv"));
  EXPECT_TRUE(fs::exists(dir / "load_report.json"));
  const json errors = json::parse(Slurp(dir / "errors.json"));
  EXPECT_TRUE(errors.at("failures").empty());
  EXPECT_EQ(errors.at("seed"), 5);
}

TEST(RunScale, ToyPanelBothMethods) {
  const fs::path dir = FreshDir("scale");
  std::ostringstream log;
  ASSERT_EQ(RunScale(ToyConfig(dir), log), 0) << log.str();
  const json doc = json::parse(Slurp(dir / "scale_balanced_1950-1999.json"));
  const double binned = doc.at("binned").at("beta").get<double>();
  const double alad = doc.at("alad").at("beta").get<double>();
  EXPECT_LT(binned, 0.0);
  EXPECT_LT(alad, 0.0);
  EXPECT_NEAR(binned, alad, 0.1);
  EXPECT_TRUE(fs::exists(dir / "bins_balanced_1950-1999.csv"));
}

TEST(RunRoll, OversizedWindowIsReportedNotThrown) {
  const fs::path dir = FreshDir("roll");
  RunConfig config = ToyConfig(dir);
  config.window = 200;
  std::ostringstream log;
  EXPECT_EQ(RunRoll(config, log), 1);
  const json errors = json::parse(Slurp(dir / "errors.json"));
  ASSERT_EQ(errors.at("failures").size(), 1u);
  EXPECT_NE(errors.at("failures")[0].at("message").get<std::string>().find(
                "exceeds"),
            std::string::npos);
}

TEST(RunFit, MissingDataFileFails) {
  const fs::path dir = FreshDir("missing");
  RunConfig config = ToyConfig(dir);
  config.manifest.data_path = dir / "nope.csv";
  std::ostringstream log;
  EXPECT_EQ(RunFit(config, log), 1);
  EXPECT_TRUE(fs::exists(dir / "errors.json"));
}

}  // namespace
}  // namespace growthscale::cli
