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

#ifndef GROWTHSCALE_PANEL_H_
#define GROWTHSCALE_PANEL_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace growthscale {

// Six-region country taxonomy.
enum class Region {
  kEuropeNorthAmerica,
  kEastEuropeCentralAsia,
  kEastSouthAsiaPacific,
  kLatinAmericaCaribbean,
  kSubSaharanAfrica,
  kMiddleEastNorthAfrica,
};

inline constexpr std::array<Region, 6> kAllRegions = {
    Region::kEuropeNorthAmerica,    Region::kEastEuropeCentralAsia,
    Region::kEastSouthAsiaPacific,  Region::kLatinAmericaCaribbean,
    Region::kSubSaharanAfrica,      Region::kMiddleEastNorthAfrica,
};

// Canonical token, e.g. "SubSaharanAfrica".
std::string_view RegionName(Region region);
std::optional<Region> ParseRegion(std::string_view token);

// One country-year record of GDP per capita (constant international dollars).
struct PanelObservation {
  std::string country;
  int year = 0;
  double gdppc = 0.0;

  friend bool operator==(const PanelObservation&,
                         const PanelObservation&) = default;
};

// Log growth rate of year `year` over `year - 1`, together with the
// country's demeaned log GDP per capita in `year`.
struct GrowthObservation {
  std::string country;
  int year = 0;
  double growth_rate = 0.0;
  double size = 0.0;

  friend bool operator==(const GrowthObservation&,
                         const GrowthObservation&) = default;
};

struct CountryMeta {
  std::string id;
  std::string name;
  Region region = Region::kEuropeNorthAmerica;
  // Complete gdppc series over the reference span used to build the panel.
  bool balanced_member = false;

  friend bool operator==(const CountryMeta&, const CountryMeta&) = default;
};

// Inclusive range of calendar years.
struct YearSpan {
  int first = 0;
  int last = 0;

  int length() const { return last - first + 1; }
  bool contains(int year) const { return year >= first && year <= last; }
  friend bool operator==(const YearSpan&, const YearSpan&) = default;
};

using CountryYear = std::pair<std::string, int>;
using SizeMap = std::map<CountryYear, double>;

// Log differences over consecutive observed years. A country-year without a
// record for the preceding year emits nothing. The returned observations
// carry size = NaN; sizes come from ComputeSizes.
//
// Throws DataError for a non-positive gdppc or a duplicate country-year.
std::vector<GrowthObservation> ComputeGrowthRates(
    std::span<const PanelObservation> raw);

// Demeaned log GDP per capita: for every year, ln(gdppc) minus the
// cross-sectional mean of ln(gdppc) over the countries in `scope` observed in
// that year. An empty `scope` means "all countries present".
//
// Throws InsufficientDataError naming the year when some year between the
// first and last observed year has no country in scope.
SizeMap ComputeSizes(std::span<const PanelObservation> raw,
                     const std::set<std::string>& scope = {});

// Immutable panel of levels plus derived growth observations.
//
// Observations are ordered by (country, year). A panel flagged balanced
// holds, for each of its countries, a growth observation for every year in
// span() after the first.
class GrowthPanel {
 public:
  GrowthPanel() = default;

  // Builds growth rates and sizes from levels. Countries in `levels` must all
  // have an entry in `meta`; entries in `meta` without data are discarded.
  GrowthPanel(std::vector<PanelObservation> levels,
              std::map<std::string, CountryMeta> meta, bool balanced);

  const std::vector<PanelObservation>& levels() const { return levels_; }
  const std::vector<GrowthObservation>& observations() const {
    return observations_;
  }
  const std::map<std::string, CountryMeta>& meta() const { return meta_; }
  // Span of level years.
  YearSpan span() const { return span_; }
  bool balanced() const { return balanced_; }
  bool empty() const { return observations_.empty(); }

  std::vector<std::string> countries() const;
  // Growth rates in observation order.
  std::vector<double> GrowthRates() const;
  std::vector<double> Sizes() const;
  // Growth rates grouped by year.
  std::map<int, std::vector<double>> GrowthRatesByYear() const;

  // Panel with the same levels and meta but different growth observations.
  // Used by Stratify; validates the balanced invariant when `balanced`.
  static GrowthPanel FromParts(std::vector<PanelObservation> levels,
                               std::vector<GrowthObservation> observations,
                               std::map<std::string, CountryMeta> meta,
                               YearSpan span, bool balanced);

  friend bool operator==(const GrowthPanel&, const GrowthPanel&) = default;

 private:
  void CheckBalanced() const;

  std::vector<PanelObservation> levels_;
  std::vector<GrowthObservation> observations_;
  std::map<std::string, CountryMeta> meta_;
  YearSpan span_;
  bool balanced_ = false;
};

// Stratification rules.
struct ByRegion {
  Region region;
};

enum class DevelopmentGroup { kDeveloped, kDeveloping };

// Median split on each country's average ln(gdppc) over the panel span.
// A non-empty `developed` list overrides the split: listed countries are
// developed, all others developing.
struct ByDevelopment {
  DevelopmentGroup group = DevelopmentGroup::kDeveloped;
  std::vector<std::string> developed;
};

struct BalancedOnly {};

// Inclusive range of growth years; levels from first - 1 are retained.
struct YearRange {
  int first = 0;
  int last = 0;
};

struct CountrySet {
  std::set<std::string> countries;
};

using StratifyRule =
    std::variant<ByRegion, ByDevelopment, BalancedOnly, YearRange, CountrySet>;

enum class SizeScope {
  // Keep sizes demeaned against the parent panel.
  kParent,
  // Recompute sizes from the retained levels of the sub-panel.
  kRecompute,
};

// Sub-panel selected by `rule`. Throws InsufficientDataError when the result
// holds no growth observation.
GrowthPanel Stratify(const GrowthPanel& panel, const StratifyRule& rule,
                     SizeScope scope = SizeScope::kParent);

// Countries classified developed by the median split of ByDevelopment.
std::set<std::string> DevelopedByMedianSplit(const GrowthPanel& panel);

std::string DescribeRule(const StratifyRule& rule);

}  // namespace growthscale

#endif  // GROWTHSCALE_PANEL_H_
