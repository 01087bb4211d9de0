// Copyright 2026 The argdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace argdist {

// Base class for every error raised by the library. Errors caused by bad
// input data (malformed files, undefined measures) derive from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input with a position (line or row number, 1-based).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A numeric operation is undefined for its inputs (zero norm, constant
// sequence, non-positive probability mass).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Command-line misuse; maps to exit status 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace argdist
