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

#include "growthscale/error.h"

#include <utility>

namespace growthscale {
namespace {

std::string WithLocation(const std::string& message, const std::string& source,
                         int line, int column) {
  if (source.empty() && line == 0) return message;
  std::string where = source.empty() ? std::string("<input>") : source;
  if (line > 0) where += ":" + std::to_string(line);
  if (column > 0) where += ":" + std::to_string(column);
  return where + ": " + message;
}

}  // namespace

DataError::DataError(const std::string& message, std::string source, int line,
                     int column)
    : Error(WithLocation(message, source, line, column)),
      detail_(message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

}  // namespace growthscale
