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


#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "growthscale/aep_fit.h"
#include "growthscale/error.h"
#include "growthscale/rolling.h"
#include "growthscale/scaling.h"
#include "growthscale/serialize.h"
#include "growthscale/stats.h"

namespace growthscale::cli {
namespace {

using nlohmann::json;

constexpr int kHistogramBins = 50;
constexpr int kCurvePoints = 401;

std::string_view MethodName(MethodChoice method) {
  switch (method) {
    case MethodChoice::kBinned:
      return "binned";
    case MethodChoice::kAlad:
      return "alad";
    case MethodChoice::kBoth:
      return "both";
  }
  return "both";
}

std::string_view SplitName(DevelopmentGroup group) {
  return group == DevelopmentGroup::kDeveloped ? "developed" : "developing";
}

std::string ErrorKind(const std::exception& e) {
  if (dynamic_cast<const DataError*>(&e)) return "data_error";
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient_data";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  return "error";
}

json StratumJson(const Stratum& s, const GrowthPanel* panel) {
  json j{{"name", s.name}};
  j["years"] = s.years ? json{s.years->first, s.years->last} : json(nullptr);
  j["region"] = s.region ? json(RegionName(*s.region)) : json(nullptr);
  j["split"] = s.split ? json(SplitName(*s.split)) : json(nullptr);
  if (panel != nullptr) {
    j["countries"] = panel->countries().size();
    j["growth_observations"] = panel->observations().size();
  }
  return j;
}

json Envelope(const RunConfig& config, const Stratum& stratum,
              const GrowthPanel& panel) {
  return json{{"config", ConfigJson(config)},
              {"seed", config.seed},
              {"stratum", StratumJson(stratum, &panel)}};
}

std::vector<std::string> Preamble(const RunConfig& config) {
  return {"growthscale " + config.command,
          "config: " + ConfigJson(config).dump()};
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

// Failures collected across concurrently processed strata.
class FailureLog {
 public:
  void Add(const std::string& stratum, const std::exception& e) {
    std::lock_guard lock(mutex_);
    entries_.push_back(
        {{"stratum", stratum}, {"kind", ErrorKind(e)}, {"message", e.what()}});
  }

  bool empty() const { return entries_.empty(); }

  // Written in every run, empty when nothing failed.
  void Write(const RunConfig& config) {
    std::sort(entries_.begin(), entries_.end(), [](const json& a, const json& b) {
      return a.at("stratum").get<std::string>() <
             b.at("stratum").get<std::string>();
    });
    WriteFileAtomic(config.out / "errors.json",
                    Dump(json{{"config", ConfigJson(config)},
                              {"seed", config.seed},
                              {"failures", entries_}}));
  }

 private:
  std::mutex mutex_;
  json entries_ = json::array();
};

std::string Join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

std::string CommentBlock(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "# " + l + "\n";
  return out;
}

std::string Num(double v) { return FormatDouble(v); }

// Histogram over the central 99% of the sample with the fitted density at
// each bin midpoint; densities are normalized by the full sample size.
std::string DensityCsv(std::span<const double> sample, const AepParams& params,
                       const std::vector<std::string>& preamble, bool curve) {
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = QuantileSorted(sorted, 0.005);
  double hi = QuantileSorted(sorted, 0.995);
  if (!(hi > lo)) hi = lo + 1.0;
  std::string out = CommentBlock(preamble);
  if (curve) {
    out += "x,fitted_density\n";
    for (int k = 0; k < kCurvePoints; ++k) {
      const double x = lo + (hi - lo) * k / (kCurvePoints - 1);
      out += Join({Num(x), Num(Density(x, params))});
    }
    return out;
  }
  const double width = (hi - lo) / kHistogramBins;
  std::vector<int> counts(kHistogramBins, 0);
  for (double v : sorted) {
    if (v < lo || v > hi) continue;
    const int k = std::min(kHistogramBins - 1,
                           static_cast<int>((v - lo) / width));
    ++counts[k];
  }
  out += "x_lo,x_hi,x_mid,count,empirical_density,fitted_density\n";
  const double n = static_cast<double>(sorted.size());
  for (int k = 0; k < kHistogramBins; ++k) {
    const double a = lo + k * width;
    const double b = a + width;
    const double mid = 0.5 * (a + b);
    out += Join({Num(a), Num(b), Num(mid), std::to_string(counts[k]),
                 Num(counts[k] / (n * width)), Num(Density(mid, params))});
  }
  return out;
}

std::string Optional(const std::optional<double>& v) {
  return v ? Num(*v) : std::string();
}

// Loads the panel or records the failure; nullopt means abort.
std::optional<LoadedPanel> Load(const RunConfig& config, FailureLog& failures,
                                std::ostream& log) {
  try {
    auto loaded = LoadPanel(config.manifest);
    log << "loaded " << loaded.report.countries << " countries, years "
        << loaded.report.years.first << "-" << loaded.report.years.last
        << ", dropped " << loaded.report.dropped.size() << ", "
        << loaded.report.warnings.size() << " warnings (load_report.json)\n";
    WriteFileAtomic(config.out / "load_report.json",
                    Dump(json{{"config", ConfigJson(config)},
                              {"seed", config.seed},
                              {"report", loaded.report}}));
    return loaded;
  } catch (const std::exception& e) {
    failures.Add("<load>", e);
    log << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void Prepare(const RunConfig& config) {
  std::filesystem::create_directories(config.out);
}

int Finish(const RunConfig& config, FailureLog& failures, std::ostream& log) {
  failures.Write(config);
  if (!failures.empty()) {
    log << "some strata failed; see " << (config.out / "errors.json").string()
        << "\n";
    return 1;
  }
  return 0;
}

// Runs `body` over strata with the configured parallelism; `inner_jobs` is
// the parallelism left for each stratum's own work.
template <typename Body>
void ForEachStratum(const RunConfig& config, const GrowthPanel& panel,
                    const std::vector<Stratum>& strata, FailureLog& failures,
                    std::ostream& log, Body body) {
  const int inner_jobs = strata.size() > 1 ? 1 : config.jobs;
  std::mutex log_mutex;
  ParallelFor(static_cast<int>(strata.size()), config.jobs, [&](int i) {
    const Stratum& stratum = strata[i];
    try {
      const GrowthPanel sub = SelectStratum(panel, stratum, config.size_scope);
      body(i, stratum, sub, inner_jobs);
      std::lock_guard lock(log_mutex);
      log << "done " << stratum.name << "\n";
    } catch (const std::exception& e) {
      failures.Add(stratum.name, e);
      std::lock_guard lock(log_mutex);
      log << "failed " << stratum.name << ": " << e.what() << "\n";
    }
  });
}

}  // namespace

json ConfigJson(const RunConfig& config) {
  json years = json::array();
  for (const auto& y : config.years) years.push_back({y.first, y.last});
  json regions = json::array();
  for (Region r : config.regions) regions.push_back(RegionName(r));
  return json{
      {"command", config.command},
      {"data", config.manifest.data_path.string()},
      {"regions_file", config.manifest.region_map_path.empty()
                           ? json(nullptr)
                           : json(config.manifest.region_map_path.string())},
      {"panel", PanelKindName(config.manifest.panel_kind)},
      {"manifest_years", {config.manifest.year_min, config.manifest.year_max}},
      {"years", years},
      {"regions", regions},
      {"split", config.split ? json(SplitName(*config.split)) : json(nullptr)},
      {"size_scope",
       config.size_scope == SizeScope::kParent ? "parent" : "recompute"},
      {"method", MethodName(config.method)},
      {"bins", config.bins},
      {"bootstrap", config.bootstrap},
      {"window", config.window},
      {"step", config.step},
      {"seed", config.seed},
      {"jobs", config.jobs},
      {"out", config.out.string()}};
}

YearRange ParseYears(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("--years expects A:B, got '" + token + "'");
  }
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = token.substr(0, colon);
    const std::string b = token.substr(colon + 1);
    YearRange range{std::stoi(a, &used_a), std::stoi(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("");
    if (range.first > range.last) {
      throw InvalidArgument("--years " + token + ": start after end");
    }
    return range;
  } catch (const std::logic_error&) {
    throw InvalidArgument("--years expects A:B with integer years, got '" +
                          token + "'");
  }
}

std::filesystem::path ResolveDataPath(const std::string& flag) {
  namespace fs = std::filesystem;
  fs::path base = flag;
  if (base.empty()) {
    const char* dir = std::getenv(kDataDirVariable);
    if (dir == nullptr || *dir == '\0') {
      throw InvalidArgument(std::string("no data: pass --data or set ") +
                            kDataDirVariable);
    }
    base = dir;
  }
  if (fs::is_directory(base)) base /= kDefaultDataFile;
  if (!fs::is_regular_file(base)) {
    throw InvalidArgument("data file not found: " + base.string());
  }
  return base;
}

std::vector<Stratum> EnumerateStrata(const RunConfig& config) {
  std::vector<std::optional<YearRange>> years(config.years.begin(),
                                              config.years.end());
  if (years.empty()) years.push_back(std::nullopt);
  std::vector<std::optional<Region>> regions(config.regions.begin(),
                                             config.regions.end());
  if (regions.empty()) regions.push_back(std::nullopt);

  std::vector<Stratum> out;
  for (const auto& y : years) {
    for (const auto& r : regions) {
      Stratum s{"", y, r, config.split};
      s.name = std::string(PanelKindName(config.manifest.panel_kind)) + "_" +
               (y ? std::to_string(y->first) + "-" + std::to_string(y->last)
                  : std::string("all"));
      if (r) s.name += "_" + std::string(RegionName(*r));
      if (s.split) s.name += "_" + std::string(SplitName(*s.split));
      out.push_back(std::move(s));
    }
  }
  return out;
}

GrowthPanel SelectStratum(const GrowthPanel& panel, const Stratum& stratum,
                          SizeScope scope) {
  GrowthPanel sub = panel;
  if (stratum.years) sub = Stratify(sub, *stratum.years, scope);
  if (stratum.split) {
    sub = Stratify(sub, ByDevelopment{*stratum.split, {}}, scope);
  }
  if (stratum.region) sub = Stratify(sub, ByRegion{*stratum.region}, scope);
  return sub;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                ec.message());
  }
}

int RunFit(const RunConfig& config, std::ostream& log) {
  Prepare(config);
  FailureLog failures;
  const auto loaded = Load(config, failures, log);
  if (!loaded) return Finish(config, failures, log);

  const auto strata = EnumerateStrata(config);
  std::vector<std::optional<std::string>> rows(strata.size());
  ForEachStratum(
      config, loaded->panel, strata, failures, log,
      [&](int i, const Stratum& stratum, const GrowthPanel& sub, int jobs) {
        const auto sample = sub.GrowthRates();
        AepFitOptions options;
        options.seed = config.seed;
        options.jobs = jobs;
        options.bootstrap_resamples = config.bootstrap;
        const AepFit fit = FitAep(sample, options);

        json doc = Envelope(config, stratum, sub);
        doc["fit"] = fit;
        WriteFileAtomic(config.out / ("fit_" + stratum.name + ".json"),
                        Dump(doc));
        auto preamble = Preamble(config);
        preamble.push_back("stratum: " + stratum.name);
        WriteFileAtomic(config.out / ("density_" + stratum.name + ".csv"),
                        DensityCsv(sample, fit.params, preamble, false));
        WriteFileAtomic(config.out / ("curve_" + stratum.name + ".csv"),
                        DensityCsv(sample, fit.params, preamble, true));

        const AepParams& p = fit.params;
        const AepStdErrors se = fit.std_errors.value_or(AepStdErrors{});
        const auto s = [&](double v) {
          return fit.std_errors ? Num(v) : std::string();
        };
        rows[i] = Join({stratum.name, std::to_string(fit.n_obs), Num(p.b_l),
                        s(se.b_l), Num(p.b_r), s(se.b_r), Num(p.a_l), s(se.a_l),
                        Num(p.a_r), s(se.a_r), Num(p.m), s(se.m),
                        Num(fit.log_likelihood),
                        fit.converged ? "true" : "false"});
      });

  std::string table = CommentBlock(Preamble(config));
  table +=
      "stratum,n,b_l,se_b_l,b_r,se_b_r,a_l,se_a_l,a_r,se_a_r,m,se_m,"
      "log_likelihood,converged\n";
  for (const auto& row : rows) {
    if (row) table += *row;
  }
  WriteFileAtomic(config.out / "fit_table.csv", table);
  return Finish(config, failures, log);
}

int RunScale(const RunConfig& config, std::ostream& log) {
  Prepare(config);
  FailureLog failures;
  const auto loaded = Load(config, failures, log);
  if (!loaded) return Finish(config, failures, log);

  const bool binned = config.method != MethodChoice::kAlad;
  const bool alad = config.method != MethodChoice::kBinned;
  const auto strata = EnumerateStrata(config);
  std::vector<std::string> rows(strata.size());
  ForEachStratum(
      config, loaded->panel, strata, failures, log,
      [&](int i, const Stratum& stratum, const GrowthPanel& sub, int jobs) {
        json doc = Envelope(config, stratum, sub);
        std::vector<ScalingFit> fits;
        if (binned) {
          BinnedOptions options;
          options.n_bins = config.bins;
          const BinnedResult result = BinnedBeta(sub, options);
          doc["binned"] = ToJson(result);
          auto preamble = Preamble(config);
          preamble.push_back("stratum: " + stratum.name);
          std::ostringstream bins;
          WriteBinsCsv(bins, result.bins, preamble);
          WriteFileAtomic(config.out / ("bins_" + stratum.name + ".csv"),
                          bins.str());
          fits.push_back(result.fit);
        }
        if (alad) {
          AladOptions options;
          options.bootstrap = config.bootstrap;
          options.seed = config.seed;
          options.jobs = jobs;
          const ScalingFit fit = FitAlad(sub, options);
          doc["alad"] = fit;
          fits.push_back(fit);
        }
        WriteFileAtomic(config.out / ("scale_" + stratum.name + ".json"),
                        Dump(doc));
        for (const auto& f : fits) {
          rows[i] += Join({stratum.name, std::string(ScalingMethodName(f.method)),
                           Num(f.beta), Num(f.se_beta), Num(f.intercept),
                           Num(f.se_intercept), Optional(f.phi1),
                           Optional(f.se_phi1), std::to_string(f.n_obs),
                           f.significant_5pct ? "true" : "false"});
        }
      });

  std::string table = CommentBlock(Preamble(config));
  table +=
      "stratum,method,beta,se_beta,intercept,se_intercept,phi1,se_phi1,n,"
      "significant_5pct\n";
  for (const auto& row : rows) table += row;
  WriteFileAtomic(config.out / "scale_table.csv", table);
  return Finish(config, failures, log);
}

int RunRoll(const RunConfig& config, std::ostream& log) {
  Prepare(config);
  FailureLog failures;
  const auto loaded = Load(config, failures, log);
  if (!loaded) return Finish(config, failures, log);

  const auto strata = EnumerateStrata(config);
  ForEachStratum(
      config, loaded->panel, strata, failures, log,
      [&](int, const Stratum& stratum, const GrowthPanel& sub, int jobs) {
        RollingOptions options;
        options.window_length = config.window;
        options.step = config.step;
        options.alad.bootstrap = config.bootstrap;
        options.alad.seed = config.seed;
        options.jobs = jobs;
        const RollingSeries series = Roll(sub, options);
        const auto segments = SignificanceSegments(series);
        const auto persistent = FirstPersistentNegativeWindow(series);

        json doc = Envelope(config, stratum, sub);
        doc["series"] = series;
        json segs = json::array();
        for (const auto& s : segments) {
          segs.push_back({{"start_year", s.start_year},
                          {"end_year", s.end_year},
                          {"significant", s.significant}});
        }
        doc["segments"] = segs;
        doc["first_persistent_negative_window"] =
            persistent ? json(*persistent) : json(nullptr);
        WriteFileAtomic(config.out / ("roll_" + stratum.name + ".json"),
                        Dump(doc));

        auto preamble = Preamble(config);
        preamble.push_back("stratum: " + stratum.name);
        std::ostringstream rolling;
        WriteRollingCsv(rolling, series, preamble);
        WriteFileAtomic(config.out / ("rolling_" + stratum.name + ".csv"),
                        rolling.str());
        std::ostringstream segments_csv;
        WriteSegmentsCsv(segments_csv, segments, preamble);
        WriteFileAtomic(config.out / ("segments_" + stratum.name + ".csv"),
                        segments_csv.str());
      });
  return Finish(config, failures, log);
}

int RunSynth(const SynthSpec& spec, const std::filesystem::path& out,
             std::ostream& log) {
  spec.Validate();
  const auto levels = GenerateLevels(spec);
  const json resolved = spec;
  const std::vector<std::string> preamble = {"growthscale synth",
                                             "spec: " + resolved.dump()};
  std::ostringstream csv;
  WriteLongCsv(csv, levels, preamble);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  WriteFileAtomic(out, csv.str());
  log << "wrote " << levels.size() << " records to " << out.string() << "\n";
  return 0;
}

}  // namespace growthscale::cli
