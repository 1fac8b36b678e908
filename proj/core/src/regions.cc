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

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "csv.h"
#include "growthscale/ingest.h"

namespace growthscale {
namespace {

struct BuiltinCountry {
  std::string_view name;
  Region region;
  bool balanced;
};

using enum Region;

// Six-region listing; `balanced` marks the countries with a complete
// 1900-1999 series.
constexpr BuiltinCountry kCountries[] = {
    {"Austria", kEuropeNorthAmerica, true},
    {"Belgium", kEuropeNorthAmerica, true},
    {"Canada", kEuropeNorthAmerica, true},
    {"Croatia", kEuropeNorthAmerica, false},
    {"Czech Republic", kEuropeNorthAmerica, false},
    {"Denmark", kEuropeNorthAmerica, true},
    {"Estonia", kEuropeNorthAmerica, false},
    {"Finland", kEuropeNorthAmerica, true},
    {"France", kEuropeNorthAmerica, true},
    {"Germany", kEuropeNorthAmerica, true},
    {"Greece", kEuropeNorthAmerica, true},
    {"Hungary", kEuropeNorthAmerica, false},
    {"Ireland", kEuropeNorthAmerica, false},
    {"Italy", kEuropeNorthAmerica, true},
    {"Netherlands", kEuropeNorthAmerica, true},
    {"Norway", kEuropeNorthAmerica, true},
    {"Poland", kEuropeNorthAmerica, false},
    {"Portugal", kEuropeNorthAmerica, true},
    {"Slovakia", kEuropeNorthAmerica, false},
    {"Slovenia", kEuropeNorthAmerica, false},
    {"Spain", kEuropeNorthAmerica, true},
    {"Sweden", kEuropeNorthAmerica, true},
    {"Switzerland", kEuropeNorthAmerica, true},
    {"United Kingdom", kEuropeNorthAmerica, true},
    {"United States", kEuropeNorthAmerica, true},

    {"Albania", kEastEuropeCentralAsia, false},
    {"Armenia", kEastEuropeCentralAsia, false},
    {"Azerbaijan", kEastEuropeCentralAsia, false},
    {"Belarus", kEastEuropeCentralAsia, false},
    {"Bosnia and Herzegovina", kEastEuropeCentralAsia, false},
    {"Bulgaria", kEastEuropeCentralAsia, false},
    {"Georgia", kEastEuropeCentralAsia, false},
    {"Kazakhstan", kEastEuropeCentralAsia, false},
    {"Kyrgyztan", kEastEuropeCentralAsia, false},
    {"Latvia", kEastEuropeCentralAsia, false},
    {"Lithuania", kEastEuropeCentralAsia, false},
    {"Macedonia", kEastEuropeCentralAsia, false},
    {"Moldova", kEastEuropeCentralAsia, false},
    {"Romania", kEastEuropeCentralAsia, false},
    {"Russian Federation", kEastEuropeCentralAsia, false},
    {"Tajikistan", kEastEuropeCentralAsia, false},
    {"Turkmenistan", kEastEuropeCentralAsia, false},
    {"Ukraine", kEastEuropeCentralAsia, false},
    {"Uzbekistan", kEastEuropeCentralAsia, false},

    {"Australia", kEastSouthAsiaPacific, true},
    {"Bangladesh", kEastSouthAsiaPacific, false},
    {"Cambodia", kEastSouthAsiaPacific, false},
    {"China", kEastSouthAsiaPacific, false},
    {"Hong Kong", kEastSouthAsiaPacific, false},
    {"India", kEastSouthAsiaPacific, true},
    {"Japan", kEastSouthAsiaPacific, true},
    {"Republic of Korea", kEastSouthAsiaPacific, false},
    {"Lao PDR", kEastSouthAsiaPacific, false},
    {"Malaysia", kEastSouthAsiaPacific, false},
    {"Mongolia", kEastSouthAsiaPacific, false},
    {"Nepal", kEastSouthAsiaPacific, false},
    {"New Zealand", kEastSouthAsiaPacific, true},
    {"Pakistan", kEastSouthAsiaPacific, false},
    {"Philippines", kEastSouthAsiaPacific, false},
    {"Singapore", kEastSouthAsiaPacific, false},
    {"Sri Lanka", kEastSouthAsiaPacific, true},
    {"Taiwan", kEastSouthAsiaPacific, false},
    {"Thailand", kEastSouthAsiaPacific, false},
    {"Vietnam", kEastSouthAsiaPacific, false},

    {"Argentina", kLatinAmericaCaribbean, true},
    {"Bolivia", kLatinAmericaCaribbean, false},
    {"Brazil", kLatinAmericaCaribbean, true},
    {"Chile", kLatinAmericaCaribbean, true},
    {"Colombia", kLatinAmericaCaribbean, true},
    {"Costa Rica", kLatinAmericaCaribbean, false},
    {"Dominican Republic", kLatinAmericaCaribbean, false},
    {"Ecuador", kLatinAmericaCaribbean, true},
    {"El Salvador", kLatinAmericaCaribbean, false},
    {"Guatemala", kLatinAmericaCaribbean, false},
    {"Honduras", kLatinAmericaCaribbean, false},
    {"Jamaica", kLatinAmericaCaribbean, false},
    {"Mexico", kLatinAmericaCaribbean, true},
    {"Panama", kLatinAmericaCaribbean, false},
    {"Paraguay", kLatinAmericaCaribbean, false},
    {"Peru", kLatinAmericaCaribbean, true},
    {"Trinidad and Tobago", kLatinAmericaCaribbean, false},
    {"Uruguay", kLatinAmericaCaribbean, true},
    {"Venezuela", kLatinAmericaCaribbean, true},

    {"Angola", kSubSaharanAfrica, false},
    {"Benin", kSubSaharanAfrica, false},
    {"Botswana", kSubSaharanAfrica, false},
    {"Burkina Faso", kSubSaharanAfrica, false},
    {"Burundi", kSubSaharanAfrica, false},
    {"Cameroon", kSubSaharanAfrica, false},
    {"Cape Verde", kSubSaharanAfrica, false},
    {"Central African Republic", kSubSaharanAfrica, false},
    {"Chad", kSubSaharanAfrica, false},
    {"Comoros", kSubSaharanAfrica, false},
    {"Republic of Congo", kSubSaharanAfrica, false},
    {"Côte d'Ivoire", kSubSaharanAfrica, false},
    {"Equatorial Guinea", kSubSaharanAfrica, false},
    {"Ethiopia", kSubSaharanAfrica, false},
    {"Gabon", kSubSaharanAfrica, false},
    {"Gambia, The", kSubSaharanAfrica, false},
    {"Ghana", kSubSaharanAfrica, false},
    {"Guinea", kSubSaharanAfrica, false},
    {"Kenya", kSubSaharanAfrica, false},
    {"Lesotho", kSubSaharanAfrica, false},
    {"Liberia", kSubSaharanAfrica, false},
    {"Madagascar", kSubSaharanAfrica, false},
    {"Malawi", kSubSaharanAfrica, false},
    {"Mali", kSubSaharanAfrica, false},
    {"Mauritania", kSubSaharanAfrica, false},
    {"Mauritius", kSubSaharanAfrica, false},
    {"Mozambique", kSubSaharanAfrica, false},
    {"Namibia", kSubSaharanAfrica, false},
    {"Niger", kSubSaharanAfrica, false},
    {"Nigeria", kSubSaharanAfrica, false},
    {"Rwanda", kSubSaharanAfrica, false},
    {"São Tomé and Principe", kSubSaharanAfrica, false},
    {"Senegal", kSubSaharanAfrica, false},
    {"Sierra Leona", kSubSaharanAfrica, false},
    {"Sudan", kSubSaharanAfrica, false},
    {"Swaziland", kSubSaharanAfrica, false},
    {"Tanzania", kSubSaharanAfrica, false},
    {"Togo", kSubSaharanAfrica, false},
    {"Uganda", kSubSaharanAfrica, false},
    {"Zaire", kSubSaharanAfrica, false},
    {"Zambia", kSubSaharanAfrica, false},
    {"Zimbabwe", kSubSaharanAfrica, false},

    {"Bahrain", kMiddleEastNorthAfrica, false},
    {"Djibouti", kMiddleEastNorthAfrica, false},
    {"Egypt", kMiddleEastNorthAfrica, false},
    {"Iran", kMiddleEastNorthAfrica, false},
    {"Iraq", kMiddleEastNorthAfrica, false},
    {"Israel", kMiddleEastNorthAfrica, false},
    {"Jordan", kMiddleEastNorthAfrica, false},
    {"Kuwait", kMiddleEastNorthAfrica, false},
    {"Lebanon", kMiddleEastNorthAfrica, false},
    {"Morocco", kMiddleEastNorthAfrica, false},
    {"Oman", kMiddleEastNorthAfrica, false},
    {"Qatar", kMiddleEastNorthAfrica, false},
    {"Saudi Arabia", kMiddleEastNorthAfrica, false},
    {"Syria", kMiddleEastNorthAfrica, false},
    {"Tunisia", kMiddleEastNorthAfrica, false},
    {"Yemen", kMiddleEastNorthAfrica, false},
};

// Spellings seen in long-run GDP tables and international statistics,
// mapped to the canonical names above.
constexpr std::pair<std::string_view, std::string_view> kAliases[] = {
    {"Korea, Rep.", "Republic of Korea"},
    {"Korea, Republic of", "Republic of Korea"},
    {"South Korea", "Republic of Korea"},
    {"S. Korea", "Republic of Korea"},
    {"Kyrgyzstan", "Kyrgyztan"},
    {"Kyrgyz Republic", "Kyrgyztan"},
    {"Sierra Leone", "Sierra Leona"},
    {"Gambia", "Gambia, The"},
    {"The Gambia", "Gambia, The"},
    {"Cote d'Ivoire", "Côte d'Ivoire"},
    {"Côte d’Ivoire", "Côte d'Ivoire"},
    {"Ivory Coast", "Côte d'Ivoire"},
    {"Sao Tome and Principe", "São Tomé and Principe"},
    {"Sao Tome & Principe", "São Tomé and Principe"},
    {"São Tomé & Principe", "São Tomé and Principe"},
    {"Congo", "Republic of Congo"},
    {"Congo, Rep.", "Republic of Congo"},
    {"Congo 'Brazzaville'", "Republic of Congo"},
    {"Congo, Dem. Rep.", "Zaire"},
    {"D.R. of Congo", "Zaire"},
    {"Democratic Republic of the Congo", "Zaire"},
    {"Zaire (Congo Kinshasa)", "Zaire"},
    {"Laos", "Lao PDR"},
    {"Lao People's Democratic Republic", "Lao PDR"},
    {"Russia", "Russian Federation"},
    {"USA", "United States"},
    {"U.S.", "United States"},
    {"United States of America", "United States"},
    {"UK", "United Kingdom"},
    {"Great Britain", "United Kingdom"},
    {"Czech Rep.", "Czech Republic"},
    {"Czechia", "Czech Republic"},
    {"Slovak Republic", "Slovakia"},
    {"Macedonia, FYR", "Macedonia"},
    {"FYR Macedonia", "Macedonia"},
    {"North Macedonia", "Macedonia"},
    {"Bosnia & Herzegovina", "Bosnia and Herzegovina"},
    {"Trinidad & Tobago", "Trinidad and Tobago"},
    {"Hong Kong SAR, China", "Hong Kong"},
    {"Hong Kong, China", "Hong Kong"},
    {"Taiwan, China", "Taiwan"},
    {"Viet Nam", "Vietnam"},
    {"Iran, Islamic Rep.", "Iran"},
    {"Syrian Arab Republic", "Syria"},
    {"Egypt, Arab Rep.", "Egypt"},
    {"Yemen, Rep.", "Yemen"},
    {"Eswatini", "Swaziland"},
    {"Cabo Verde", "Cape Verde"},
    {"Central African Rep.", "Central African Republic"},
    {"Dominican Rep.", "Dominican Republic"},
    {"Republic of Moldova", "Moldova"},
    {"Tanzania, United Rep.", "Tanzania"},
    {"United Republic of Tanzania", "Tanzania"},
    {"Venezuela, RB", "Venezuela"},
};

}  // namespace

std::string CanonicalCountryName(std::string_view name) {
  std::string trimmed = internal::Trim(name);
  for (const auto& [alias, canonical] : kAliases) {
    if (alias == trimmed) return std::string(canonical);
  }
  return trimmed;
}

const RegionMap& BuiltinRegionMap() {
  static const RegionMap map = [] {
    RegionMap out;
    int line = 0;
    for (const auto& c : kCountries) {
      out.emplace(std::string(c.name), RegionEntry{c.region, c.balanced, ++line});
    }
    return out;
  }();
  return map;
}

}  // namespace growthscale
