// Copyright 2026 The Autocomm Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace autocomm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration document could not be parsed or violates an invariant.
/// `field()` names the offending JSON path ("scheduling.num_rbs"); `line()`
/// is 1-based and 0 when the error is not tied to a source position.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what, int line = 0)
      : Error(format(field, what, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& what, int line) {
    std::string msg = "config";
    if (line > 0) msg += " line " + std::to_string(line);
    if (!field.empty()) msg += " field '" + field + "'";
    return msg + ": " + what;
  }

  std::string field_;
  int line_ = 0;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace autocomm
