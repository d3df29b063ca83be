// Copyright 2026 The safebo Authors.
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

#ifndef SAFEBO_ERRORS_HPP_
#define SAFEBO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace safebo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Cholesky failed even after the jitter escalation; `jitter()` is the last
// diagonal increment that was tried.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, double jitter)
      : Error(what), jitter_(jitter) {}
  double jitter() const { return jitter_; }

 private:
  double jitter_;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Zero posterior variance at one of the points of a correlation query.
class DegenerateCorrelationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

// No feasible (safe) probe was found by a search.
class ExplorationStallError : public Error {
 public:
  using Error::Error;
};

class SimulationError : public Error {
 public:
  using Error::Error;
};

}  // namespace safebo

#endif  // SAFEBO_ERRORS_HPP_
