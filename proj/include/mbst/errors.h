// Copyright 2026 The mbst Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbst {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension mismatch, qubit out of range, malformed state.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A forced measurement outcome whose Born probability is below the
/// zero-probability threshold.
class ImpossibleBranch : public Error {
 public:
  using Error::Error;
};

/// Both outcome probabilities vanished; the state is corrupt.
class CorruptState : public Error {
 public:
  using Error::Error;
};

class EntangledQubit : public Error {
 public:
  using Error::Error;
};

class MarginalMismatch : public Error {
 public:
  using Error::Error;
};

/// A conjugated observable left the supported axis set, or a V slot is not
/// Clifford.
class UnsupportedObservable : public Error {
 public:
  using Error::Error;
};

class MaxRoundsExceeded : public Error {
 public:
  using Error::Error;
};

/// Circuit or program text that does not follow its grammar.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Program file content that is not a valid program.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbst
