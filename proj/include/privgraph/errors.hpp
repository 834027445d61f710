// Copyright 2026 The privgraph Authors
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

#ifndef PRIVGRAPH_ERRORS_HPP_
#define PRIVGRAPH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privgraph {

// Base class for every error raised by the library. The CLI maps each
// concrete type to a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

// Invalid argument values (negative epsilon, d >= n, length mismatch, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

// A latent configuration produces an inner product outside [0, 1].
class AdmissibilityError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

// Eigensolver failures and numerically degenerate inputs.
class NumericError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace privgraph

#endif  // PRIVGRAPH_ERRORS_HPP_
