// Copyright 2026 The QHES Authors
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

#ifndef QHES_ERRORS_H_
#define QHES_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qhes {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown register group, qubit index out of range, bit pattern of the wrong
// length.
class LayoutError : public Error {
 public:
  using Error::Error;
};

// A parameter bundle or operand violates its documented invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A freezing counter is too small for the requested number of rounds.
class CapacityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Post-selection found no weight on the requested pattern.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// The request exceeds a simulator cap (qubit count, dense matrix size).
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qhes

#endif  // QHES_ERRORS_H_
