// Copyright 2026 The Slingshot Authors
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

#ifndef SLINGSHOT_ERRORS_H_
#define SLINGSHOT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace slingshot {

// Shape mismatch between a game and a profile/gradient, or invalid sizes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite intermediate values.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solve exhausted its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}
  double best_residual;
};

// Input outside the mathematical domain of an operation (e.g. boundary
// point where a log/ratio formula is undefined).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// (divergence, regularizer) pair with no tabulated relative constants.
class UnsupportedCombinationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad configuration (unknown names, invalid parameter values).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace slingshot

#endif  // SLINGSHOT_ERRORS_H_
