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


// growthscale: command-line front end for fitting growth-rate densities,
// estimating the volatility-size scaling relation and generating synthetic
// panels.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "growthscale/error.h"
#include "growthscale/serialize.h"

namespace {

namespace cli = growthscale::cli;
using growthscale::InvalidArgument;

struct CommonFlags {
  std::string data;
  std::string regions;
  std::string panel = "balanced";
  std::vector<std::string> years;
  std::vector<std::string> region_names;
  std::string split;
  std::string size_scope = "parent";
  int bootstrap = 200;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "out";
  int manifest_first = 1900;
  int manifest_last = 1999;
};

void AddCommon(CLI::App* app, CommonFlags& f) {
  app->add_option("--data", f.data,
                  "GDP-per-capita table, or a directory holding " +
                      std::string(cli::kDefaultDataFile) + " (default: $" +
                      cli::kDataDirVariable + ")");
  app->add_option("--regions", f.regions,
                  "country,region[,balanced] map (default: built in)");
  app->add_option("--panel", f.panel, "balanced or unbalanced")
      ->check(CLI::IsMember({"balanced", "unbalanced"}));
  app->add_option("--years", f.years,
                  "growth-year range A:B; repeat for several strata");
  app->add_option("--region", f.region_names,
                  "region stratum; repeat for several");
  app->add_option("--split", f.split, "developed or developing")
      ->check(CLI::IsMember({"developed", "developing"}));
  app->add_option("--size-scope", f.size_scope,
                  "parent (sizes against the loaded panel) or recompute "
                  "(within each stratum)")
      ->check(CLI::IsMember({"parent", "recompute"}));
  app->add_option("--bootstrap", f.bootstrap, "bootstrap resamples")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", f.out, "output directory");
  app->add_option("--manifest-first", f.manifest_first,
                  "first level year kept (balanced membership is judged on "
                  "this year through --manifest-last)");
  app->add_option("--manifest-last", f.manifest_last, "last level year kept");
}

cli::RunConfig ToConfig(const std::string& command, const CommonFlags& f) {
  cli::RunConfig c;
  c.command = command;
  c.manifest.data_path = cli::ResolveDataPath(f.data);
  c.manifest.region_map_path = f.regions;
  c.manifest.panel_kind = *growthscale::ParsePanelKind(f.panel);
  c.manifest.year_min = f.manifest_first;
  c.manifest.year_max = f.manifest_last;
  for (const auto& y : f.years) c.years.push_back(cli::ParseYears(y));
  for (const auto& r : f.region_names) {
    const auto region = growthscale::ParseRegion(r);
    if (!region) throw InvalidArgument("unknown region '" + r + "'");
    c.regions.push_back(*region);
  }
  if (f.split == "developed") c.split = growthscale::DevelopmentGroup::kDeveloped;
  if (f.split == "developing") c.split = growthscale::DevelopmentGroup::kDeveloping;
  c.size_scope = f.size_scope == "recompute"
                     ? growthscale::SizeScope::kRecompute
                     : growthscale::SizeScope::kParent;
  c.bootstrap = f.bootstrap;
  c.seed = f.seed;
  c.jobs = f.jobs;
  c.out = f.out;
  return c;
}

struct SynthFlags {
  std::string spec_file;
  int countries = 31;
  std::string years = "1950:1999";
  double alpha = 0.02;
  double phi1 = 0.35;
  double beta = -0.2;
  std::vector<double> shock;
  std::string size_mode = "endogenous";
  std::string names = "default";
  std::uint64_t seed = 1;
  std::string out = "synth.csv";
};

growthscale::SynthSpec ToSpec(const SynthFlags& f, const CLI::App& app) {
  growthscale::SynthSpec spec;
  if (!f.spec_file.empty()) {
    std::ifstream in(f.spec_file);
    if (!in) throw InvalidArgument("cannot open spec file " + f.spec_file);
    try {
      spec = nlohmann::json::parse(in).get<growthscale::SynthSpec>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("spec file " + f.spec_file + ": " + e.what());
    }
  }
  // Flags given explicitly override the spec file.
  const auto given = [&](const char* name) { return app.count(name) > 0; };
  if (f.spec_file.empty() || given("--countries")) spec.n_countries = f.countries;
  if (f.spec_file.empty() || given("--years")) {
    const auto range = cli::ParseYears(f.years);
    spec.start_year = range.first;
    spec.n_years = range.last - range.first + 1;
  }
  if (f.spec_file.empty() || given("--alpha")) spec.alpha = f.alpha;
  if (f.spec_file.empty() || given("--phi1")) spec.phi1 = f.phi1;
  if (f.spec_file.empty() || given("--beta")) spec.beta = f.beta;
  if (given("--shock")) {
    if (f.shock.size() != 4) {
      throw InvalidArgument("--shock expects b_l,b_r,a_l,a_r");
    }
    spec.shock = {f.shock[0], f.shock[1], f.shock[2], f.shock[3], 0.0};
  }
  if (f.spec_file.empty() || given("--size-mode")) {
    spec.size_mode = f.size_mode == "fixed" ? growthscale::SizeMode::kFixed
                                            : growthscale::SizeMode::kEndogenous;
  }
  if (f.names == "balanced") {
    spec.country_names.clear();
    for (const auto& [name, entry] : growthscale::BuiltinRegionMap()) {
      if (entry.balanced.value_or(false)) spec.country_names.push_back(name);
    }
    spec.n_countries = static_cast<int>(spec.country_names.size());
    spec.size_profile.clear();
  }
  if (f.spec_file.empty() || given("--seed")) spec.seed = f.seed;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growthscale: growth-rate densities and volatility scaling"};
  app.require_subcommand(1);

  CommonFlags fit_flags;
  CLI::App* fit = app.add_subcommand(
      "fit", "fit the asymmetric exponential power density per stratum");
  AddCommon(fit, fit_flags);

  CommonFlags scale_flags;
  std::string method = "both";
  int bins = 15;
  CLI::App* scale =
      app.add_subcommand("scale", "estimate the volatility-size scaling");
  AddCommon(scale, scale_flags);
  scale->add_option("--method", method, "binned, alad or both")
      ->check(CLI::IsMember({"binned", "alad", "both"}));
  scale->add_option("--bins", bins, "equal-occupancy size bins")
      ->check(CLI::PositiveNumber);

  CommonFlags roll_flags;
  int window = 10;
  int step = 1;
  CLI::App* roll =
      app.add_subcommand("roll", "ALAD scaling over rolling year windows");
  AddCommon(roll, roll_flags);
  roll->add_option("--window", window, "window length in growth years")
      ->check(CLI::PositiveNumber);
  roll->add_option("--step", step, "years between window starts")
      ->check(CLI::PositiveNumber);

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand(
      "synth", "write a synthetic panel as a long CSV");
  synth->add_option("--spec", synth_flags.spec_file, "JSON synthesis spec");
  synth->add_option("--countries", synth_flags.countries, "number of countries")
      ->check(CLI::PositiveNumber);
  synth->add_option("--years", synth_flags.years, "growth-year range A:B");
  synth->add_option("--alpha", synth_flags.alpha, "AR(1) constant");
  synth->add_option("--phi1", synth_flags.phi1, "AR(1) coefficient, |phi1| < 1");
  synth->add_option("--beta", synth_flags.beta, "volatility-size exponent");
  synth->add_option("--shock", synth_flags.shock,
                    "shock density b_l,b_r,a_l,a_r (mode 0)")
      ->delimiter(',');
  synth->add_option("--size-mode", synth_flags.size_mode, "endogenous or fixed")
      ->check(CLI::IsMember({"endogenous", "fixed"}));
  synth->add_option("--names", synth_flags.names,
                    "default (C01, C02, ...) or balanced (the 31 "
                    "balanced-panel countries)")
      ->check(CLI::IsMember({"default", "balanced"}));
  synth->add_option("--seed", synth_flags.seed, "random seed");
  synth->add_option("--out", synth_flags.out, "output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      return cli::RunFit(ToConfig("fit", fit_flags), std::cerr);
    }
    if (scale->parsed()) {
      auto config = ToConfig("scale", scale_flags);
      config.method = method == "binned" ? cli::MethodChoice::kBinned
                      : method == "alad" ? cli::MethodChoice::kAlad
                                         : cli::MethodChoice::kBoth;
      config.bins = bins;
      return cli::RunScale(config, std::cerr);
    }
    if (roll->parsed()) {
      auto config = ToConfig("roll", roll_flags);
      config.window = window;
      config.step = step;
      return cli::RunRoll(config, std::cerr);
    }
    if (synth->parsed()) {
      return cli::RunSynth(ToSpec(synth_flags, *synth), synth_flags.out,
                           std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
