// Copyright 2026 The gmpe-ann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gmpe_ann {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input value lies outside the mathematical domain of an operation
/// (non-finite, non-positive where a logarithm or divisor is required).
class DomainError : public Error {
 public:
  DomainError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed or inconsistent input data: catalogs, model files, reports.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The numerics broke down: singular systems, non-finite losses, undefined
/// statistics.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmpe_ann
