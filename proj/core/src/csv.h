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

#ifndef GROWTHSCALE_SRC_CSV_H_
#define GROWTHSCALE_SRC_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace growthscale::internal {

struct CsvRow {
  int line = 0;  // 1-based physical line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180 records: quoted fields may hold commas, doubled quotes and line
// breaks. A leading UTF-8 BOM is skipped. Blank lines and lines whose first
// character is '#' are ignored.
std::vector<CsvRow> ReadCsv(std::istream& in, const std::string& source);

// Quotes a field when it holds a comma, quote or line break.
std::string CsvField(std::string_view value);

std::string Trim(std::string_view s);

}  // namespace growthscale::internal

#endif  // GROWTHSCALE_SRC_CSV_H_
