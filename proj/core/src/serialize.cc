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

#include "growthscale/serialize.h"

#include <charconv>
#include <cmath>
#include <ostream>

#include "growthscale/error.h"
#include "growthscale/stats.h"

namespace growthscale {
namespace {

using nlohmann::json;

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void Preamble(std::ostream& out, std::span<const std::string> lines) {
  for (const auto& line : lines) out << "# " << line << '\n';
}

std::string Cell(double v) { return std::isfinite(v) ? FormatDouble(v) : "NA"; }

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, end);
}

void to_json(json& j, const AepParams& p) {
  j = json{{"b_l", p.b_l}, {"b_r", p.b_r}, {"a_l", p.a_l}, {"a_r", p.a_r},
           {"m", p.m}};
}

void from_json(const json& j, AepParams& p) {
  p.b_l = j.at("b_l").get<double>();
  p.b_r = j.at("b_r").get<double>();
  p.a_l = j.at("a_l").get<double>();
  p.a_r = j.at("a_r").get<double>();
  p.m = j.at("m").get<double>();
}

void to_json(json& j, const AepFit& fit) {
  j = fit.params;
  if (fit.std_errors) {
    const auto& se = *fit.std_errors;
    j["se"] = json{{"b_l", se.b_l}, {"b_r", se.b_r}, {"a_l", se.a_l},
                   {"a_r", se.a_r}, {"m", se.m}};
  } else {
    j["se"] = nullptr;
  }
  j["se_method"] = StdErrorMethodName(fit.se_method);
  j["loglik"] = fit.log_likelihood;
  j["n"] = fit.n_obs;
  j["converged"] = fit.converged;
  j["restarts"] = fit.n_restarts_used;
}

void to_json(json& j, const BinStat& bin) {
  j = json{{"bin", bin.bin_index},
           {"mean_size", bin.mean_size},
           {"sigma", bin.sigma},
           {"count", bin.count}};
}

void to_json(json& j, const ScalingFit& fit) {
  j = json{{"method", ScalingMethodName(fit.method)},
           {"beta", fit.beta},
           {"se_beta", NumberOrNull(fit.se_beta)},
           {"alpha_or_gamma", fit.intercept},
           {"se_alpha_or_gamma", NumberOrNull(fit.se_intercept)},
           {"phi1", fit.phi1 ? json(*fit.phi1) : json(nullptr)},
           {"se_phi1", fit.se_phi1 ? NumberOrNull(*fit.se_phi1) : json(nullptr)},
           {"n", fit.n_obs},
           {"significant_5pct", fit.significant_5pct}};
  if (fit.method == ScalingMethod::kBinned) {
    j["df"] = fit.df;
  } else {
    j["objective"] = fit.objective;
    j["bootstrap_used"] = fit.bootstrap_used;
  }
}

json ToJson(const BinnedResult& result) {
  json j = result.fit;
  j["bins"] = result.bins;
  return j;
}

void to_json(json& j, const LoadReport& report) {
  j = json{{"countries", report.countries},
           {"years", json::array({report.years.first, report.years.last})},
           {"dropped", report.dropped},
           {"balanced_members", report.balanced_members},
           {"warnings", report.warnings}};
}

void to_json(json& j, const SynthSpec& spec) {
  j = json{{"n_countries", spec.n_countries},
           {"n_years", spec.n_years},
           {"start_year", spec.start_year},
           {"alpha", spec.alpha},
           {"phi1", spec.phi1},
           {"beta", spec.beta},
           {"shock", spec.shock},
           {"size_profile", spec.ResolvedSizeProfile()},
           {"country_names", spec.ResolvedCountryNames()},
           {"base_log_gdppc", spec.base_log_gdppc},
           {"burn_in", spec.burn_in},
           {"size_mode",
            spec.size_mode == SizeMode::kEndogenous ? "endogenous" : "fixed"},
           {"seed", spec.seed}};
}

void from_json(const json& j, SynthSpec& spec) {
  SynthSpec d;
  spec.n_countries = j.value("n_countries", d.n_countries);
  spec.n_years = j.value("n_years", d.n_years);
  spec.start_year = j.value("start_year", d.start_year);
  spec.alpha = j.value("alpha", d.alpha);
  spec.phi1 = j.value("phi1", d.phi1);
  spec.beta = j.value("beta", d.beta);
  spec.shock = j.contains("shock") ? j.at("shock").get<AepParams>() : d.shock;
  spec.size_profile =
      j.value("size_profile", std::vector<double>{});
  spec.country_names = j.value("country_names", std::vector<std::string>{});
  spec.base_log_gdppc = j.value("base_log_gdppc", d.base_log_gdppc);
  spec.burn_in = j.value("burn_in", d.burn_in);
  const std::string mode = j.value("size_mode", std::string("endogenous"));
  if (mode == "endogenous") {
    spec.size_mode = SizeMode::kEndogenous;
  } else if (mode == "fixed") {
    spec.size_mode = SizeMode::kFixed;
  } else {
    throw InvalidArgument("size_mode must be 'endogenous' or 'fixed'");
  }
  spec.seed = j.value("seed", d.seed);
}

void to_json(json& j, const RollingSeries& series) {
  json entries = json::array();
  for (const auto& e : series.entries) {
    json row{{"window_start", e.window_start},
             {"window_end", e.window_end},
             {"window_mid", e.midpoint()},
             {"n_pairs", e.n_pairs}};
    if (e.fit) {
      row["fit"] = *e.fit;
    } else {
      row["fit"] = nullptr;
      row["gap"] = e.gap_reason;
    }
    entries.push_back(std::move(row));
  }
  j = json{{"window_length", series.window_length},
           {"step", series.step},
           {"entries", std::move(entries)}};
}

void WriteBinsCsv(std::ostream& out, std::span<const BinStat> bins,
                  std::span<const std::string> preamble) {
  Preamble(out, preamble);
  out << "bin,mean_size,sigma,count\n";
  for (const auto& b : bins) {
    out << b.bin_index << ',' << FormatDouble(b.mean_size) << ','
        << FormatDouble(b.sigma) << ',' << b.count << '\n';
  }
}

void WriteRollingCsv(std::ostream& out, const RollingSeries& series,
                     std::span<const std::string> preamble) {
  Preamble(out, preamble);
  out << "window_start,window_end,beta,se_beta,phi1,se_phi1,alpha,n,"
         "significant,window_mid,beta_lo95,beta_hi95,gap\n";
  const double z = NormalQuantile(0.975);
  for (const auto& e : series.entries) {
    out << e.window_start << ',' << e.window_end << ',';
    if (e.fit) {
      const auto& f = *e.fit;
      out << Cell(f.beta) << ',' << Cell(f.se_beta) << ','
          << Cell(f.phi1.value_or(NAN)) << ',' << Cell(f.se_phi1.value_or(NAN))
          << ',' << Cell(f.intercept) << ',' << f.n_obs << ','
          << (f.significant_5pct ? 1 : 0) << ',' << Cell(e.midpoint()) << ','
          << Cell(f.beta - z * f.se_beta) << ',' << Cell(f.beta + z * f.se_beta)
          << ",0\n";
    } else {
      out << "NA,NA,NA,NA,NA," << e.n_pairs << ",0," << Cell(e.midpoint())
          << ",NA,NA,1\n";
    }
  }
}

void WriteSegmentsCsv(std::ostream& out,
                      std::span<const SignificanceSegment> segments,
                      std::span<const std::string> preamble) {
  Preamble(out, preamble);
  out << "start_year,end_year,significant\n";
  for (const auto& s : segments) {
    out << s.start_year << ',' << s.end_year << ',' << (s.significant ? 1 : 0)
        << '\n';
  }
}

}  // namespace growthscale
