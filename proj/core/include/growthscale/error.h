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

#ifndef GROWTHSCALE_ERROR_H_
#define GROWTHSCALE_ERROR_H_

#include <stdexcept>
#include <string>

namespace growthscale {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. Carries the source location when
// one is known (line and column are 1-based; 0 means "not applicable").
class DataError : public Error {
 public:
  DataError(const std::string& message, std::string source = {}, int line = 0,
            int column = 0);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  // The message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::string source_;
  int line_;
  int column_;
};

// The data are valid but too few (or too degenerate) for the requested
// estimator.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Caller passed an argument outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace growthscale

#endif  // GROWTHSCALE_ERROR_H_
