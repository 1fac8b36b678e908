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

#include "growthscale/panel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "growthscale/error.h"
#include "growthscale/stats.h"

namespace growthscale {
namespace {

constexpr std::array<std::string_view, 6> kRegionTokens = {
    "EuropeNorthAmerica",    "EastEuropeCentralAsia", "EastSouthAsiaPacific",
    "LatinAmericaCaribbean", "SubSaharanAfrica",      "MiddleEastNorthAfrica",
};

bool ByCountryYear(const PanelObservation& a, const PanelObservation& b) {
  return std::tie(a.country, a.year) < std::tie(b.country, b.year);
}

std::vector<PanelObservation> SortedChecked(
    std::span<const PanelObservation> raw) {
  std::vector<PanelObservation> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end(), ByCountryYear);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& obs = sorted[i];
    if (!(obs.gdppc > 0.0) || !std::isfinite(obs.gdppc)) {
      std::ostringstream msg;
      msg << "non-positive gdppc " << obs.gdppc << " for (" << obs.country
          << ", " << obs.year << ")";
      throw DataError(msg.str());
    }
    if (i > 0 && sorted[i - 1].country == obs.country &&
        sorted[i - 1].year == obs.year) {
      throw DataError("duplicate record (" + obs.country + ", " +
                      std::to_string(obs.year) + ")");
    }
  }
  return sorted;
}

YearSpan SpanOf(std::span<const PanelObservation> levels) {
  if (levels.empty()) return {};
  YearSpan span{std::numeric_limits<int>::max(),
                std::numeric_limits<int>::min()};
  for (const auto& obs : levels) {
    span.first = std::min(span.first, obs.year);
    span.last = std::max(span.last, obs.year);
  }
  return span;
}

std::vector<GrowthObservation> WithSizes(std::vector<GrowthObservation> growth,
                                         const SizeMap& sizes) {
  for (auto& g : growth) g.size = sizes.at({g.country, g.year});
  return growth;
}

std::set<std::string> CountriesOf(std::span<const PanelObservation> levels) {
  std::set<std::string> out;
  for (const auto& obs : levels) out.insert(obs.country);
  return out;
}

}  // namespace

std::string_view RegionName(Region region) {
  return kRegionTokens[static_cast<std::size_t>(region)];
}

std::optional<Region> ParseRegion(std::string_view token) {
  for (std::size_t i = 0; i < kRegionTokens.size(); ++i) {
    if (kRegionTokens[i] == token) return kAllRegions[i];
  }
  return std::nullopt;
}

std::vector<GrowthObservation> ComputeGrowthRates(
    std::span<const PanelObservation> raw) {
  const auto sorted = SortedChecked(raw);
  std::vector<GrowthObservation> out;
  out.reserve(sorted.size());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& prev = sorted[i - 1];
    const auto& cur = sorted[i];
    if (prev.country != cur.country || prev.year + 1 != cur.year) continue;
    out.push_back({cur.country, cur.year,
                   std::log(cur.gdppc) - std::log(prev.gdppc),
                   std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

SizeMap ComputeSizes(std::span<const PanelObservation> raw,
                     const std::set<std::string>& scope) {
  std::map<int, std::vector<const PanelObservation*>> by_year;
  for (const auto& obs : raw) {
    if (!(obs.gdppc > 0.0)) {
      throw DataError("non-positive gdppc for (" + obs.country + ", " +
                      std::to_string(obs.year) + ")");
    }
    if (!scope.empty() && !scope.contains(obs.country)) continue;
    by_year[obs.year].push_back(&obs);
  }
  if (by_year.empty()) {
    throw InsufficientDataError("empty cross-section: no country in scope");
  }
  const int first = by_year.begin()->first;
  const int last = by_year.rbegin()->first;
  SizeMap sizes;
  for (int year = first; year <= last; ++year) {
    auto it = by_year.find(year);
    if (it == by_year.end()) {
      throw InsufficientDataError("empty cross-section in year " +
                                  std::to_string(year));
    }
    double mean = 0.0;
    for (const auto* obs : it->second) mean += std::log(obs->gdppc);
    mean /= static_cast<double>(it->second.size());
    for (const auto* obs : it->second) {
      sizes[{obs->country, year}] = std::log(obs->gdppc) - mean;
    }
  }
  return sizes;
}

GrowthPanel::GrowthPanel(std::vector<PanelObservation> levels,
                         std::map<std::string, CountryMeta> meta,
                         bool balanced) {
  levels_ = SortedChecked(levels);
  const auto countries = CountriesOf(levels_);
  for (const auto& country : countries) {
    auto it = meta.find(country);
    if (it == meta.end()) {
      throw DataError("no country metadata for '" + country + "'");
    }
    meta_.emplace(country, it->second);
  }
  span_ = SpanOf(levels_);
  if (!levels_.empty()) {
    observations_ = WithSizes(ComputeGrowthRates(levels_), ComputeSizes(levels_));
  }
  balanced_ = balanced;
  if (balanced_) CheckBalanced();
}

GrowthPanel GrowthPanel::FromParts(std::vector<PanelObservation> levels,
                                   std::vector<GrowthObservation> observations,
                                   std::map<std::string, CountryMeta> meta,
                                   YearSpan span, bool balanced) {
  GrowthPanel panel;
  panel.levels_ = std::move(levels);
  panel.observations_ = std::move(observations);
  panel.meta_ = std::move(meta);
  panel.span_ = span;
  panel.balanced_ = balanced;
  if (balanced) panel.CheckBalanced();
  return panel;
}

void GrowthPanel::CheckBalanced() const {
  const int expected = span_.length() - 1;
  std::map<std::string, int> counts;
  for (const auto& obs : observations_) ++counts[obs.country];
  for (const auto& [country, meta] : meta_) {
    const int have = counts.contains(country) ? counts.at(country) : 0;
    if (have != expected) {
      throw DataError("balanced panel: '" + country + "' has " +
                      std::to_string(have) + " growth years, expected " +
                      std::to_string(expected));
    }
  }
}

std::vector<std::string> GrowthPanel::countries() const {
  std::vector<std::string> out;
  out.reserve(meta_.size());
  for (const auto& [country, meta] : meta_) out.push_back(country);
  return out;
}

std::vector<double> GrowthPanel::GrowthRates() const {
  std::vector<double> out;
  out.reserve(observations_.size());
  for (const auto& obs : observations_) out.push_back(obs.growth_rate);
  return out;
}

std::vector<double> GrowthPanel::Sizes() const {
  std::vector<double> out;
  out.reserve(observations_.size());
  for (const auto& obs : observations_) out.push_back(obs.size);
  return out;
}

std::map<int, std::vector<double>> GrowthPanel::GrowthRatesByYear() const {
  std::map<int, std::vector<double>> out;
  for (const auto& obs : observations_) out[obs.year].push_back(obs.growth_rate);
  return out;
}

std::set<std::string> DevelopedByMedianSplit(const GrowthPanel& panel) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& obs : panel.levels()) {
    auto& [sum, n] = acc[obs.country];
    sum += std::log(obs.gdppc);
    ++n;
  }
  std::vector<double> averages;
  averages.reserve(acc.size());
  for (const auto& [country, sn] : acc) averages.push_back(sn.first / sn.second);
  const double median = Median(averages);
  std::set<std::string> developed;
  for (const auto& [country, sn] : acc) {
    if (sn.first / sn.second > median) developed.insert(country);
  }
  return developed;
}

GrowthPanel Stratify(const GrowthPanel& panel, const StratifyRule& rule,
                     SizeScope scope) {
  std::set<std::string> keep;
  std::optional<YearRange> years;
  bool balanced = panel.balanced();

  if (const auto* r = std::get_if<ByRegion>(&rule)) {
    for (const auto& [country, meta] : panel.meta()) {
      if (meta.region == r->region) keep.insert(country);
    }
  } else if (const auto* d = std::get_if<ByDevelopment>(&rule)) {
    const std::set<std::string> developed =
        d->developed.empty()
            ? DevelopedByMedianSplit(panel)
            : std::set<std::string>(d->developed.begin(), d->developed.end());
    for (const auto& [country, meta] : panel.meta()) {
      const bool is_developed = developed.contains(country);
      if (is_developed == (d->group == DevelopmentGroup::kDeveloped)) {
        keep.insert(country);
      }
    }
  } else if (std::holds_alternative<BalancedOnly>(rule)) {
    for (const auto& [country, meta] : panel.meta()) {
      if (meta.balanced_member) keep.insert(country);
    }
    balanced = true;
  } else if (const auto* y = std::get_if<YearRange>(&rule)) {
    if (y->first > y->last) {
      throw InvalidArgument("year range " + std::to_string(y->first) + ":" +
                            std::to_string(y->last) + " is empty");
    }
    years = *y;
    for (const auto& [country, meta] : panel.meta()) keep.insert(country);
  } else if (const auto* c = std::get_if<CountrySet>(&rule)) {
    for (const auto& [country, meta] : panel.meta()) {
      if (c->countries.contains(country)) keep.insert(country);
    }
  }

  std::vector<PanelObservation> levels;
  for (const auto& obs : panel.levels()) {
    if (!keep.contains(obs.country)) continue;
    if (years && (obs.year < years->first - 1 || obs.year > years->last)) {
      continue;
    }
    levels.push_back(obs);
  }
  std::vector<GrowthObservation> growth;
  for (const auto& obs : panel.observations()) {
    if (!keep.contains(obs.country)) continue;
    if (years && (obs.year < years->first || obs.year > years->last)) continue;
    growth.push_back(obs);
  }
  if (growth.empty()) {
    throw InsufficientDataError("stratification '" + DescribeRule(rule) +
                                "' leaves an empty panel");
  }

  // Countries whose levels survive but which have no growth observation in
  // range are dropped from the sub-panel.
  std::set<std::string> with_growth;
  for (const auto& obs : growth) with_growth.insert(obs.country);
  std::erase_if(levels, [&](const PanelObservation& obs) {
    return !with_growth.contains(obs.country);
  });
  std::map<std::string, CountryMeta> meta;
  for (const auto& country : with_growth) {
    meta.emplace(country, panel.meta().at(country));
  }

  if (scope == SizeScope::kRecompute) {
    growth = WithSizes(std::move(growth), ComputeSizes(levels));
  }
  YearSpan span = SpanOf(levels);
  if (years) {
    span.first = std::max(span.first, years->first - 1);
    span.last = std::min(span.last, years->last);
  }
  return GrowthPanel::FromParts(std::move(levels), std::move(growth),
                                std::move(meta), span, balanced);
}

std::string DescribeRule(const StratifyRule& rule) {
  struct Visitor {
    std::string operator()(const ByRegion& r) const {
      return "region=" + std::string(RegionName(r.region));
    }
    std::string operator()(const ByDevelopment& d) const {
      return d.group == DevelopmentGroup::kDeveloped ? "split=developed"
                                                     : "split=developing";
    }
    std::string operator()(const BalancedOnly&) const { return "balanced"; }
    std::string operator()(const YearRange& y) const {
      return "years=" + std::to_string(y.first) + ":" + std::to_string(y.last);
    }
    std::string operator()(const CountrySet& c) const {
      return "countries=" + std::to_string(c.countries.size());
    }
  };
  return std::visit(Visitor{}, rule);
}

}  // namespace growthscale
