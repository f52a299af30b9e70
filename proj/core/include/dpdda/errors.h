// Copyright 2026 The dpdda Authors
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

#ifndef DPDDA_ERRORS_H_
#define DPDDA_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpdda {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph schedule that cannot produce a valid weight matrix (empty
// in-neighbourhood, missing self-loop, agent index out of range).
class InvalidScheduleError : public Error {
 public:
  using Error::Error;
};

// A delay or index outside its declared bound.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// An argument outside the mathematical domain of an operation, e.g. an action
// outside its box or a nonpositive scale.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Privacy ledger misuse (e.g. recording the same step twice).
class AccountingError : public Error {
 public:
  using Error::Error;
};

// Numerical degeneracy detected while running the algorithm.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, int t, int agent)
      : Error(what + " (t=" + std::to_string(t) +
              ", agent=" + std::to_string(agent + 1) + ")"),
        t_(t),
        agent_(agent) {}

  int t() const { return t_; }
  int agent() const { return agent_; }

 private:
  int t_;
  int agent_;
};

// Internal invariant broken; indicates a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Diagnostics that could not be computed (non-convergent products, failed
// equilibrium solve).
class DiagnosticError : public Error {
 public:
  using Error::Error;
};

// Configuration problems. Carries every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> items)
      : Error(Join(items)), items_(std::move(items)) {}
  explicit ConfigError(const std::string& item)
      : ConfigError(std::vector<std::string>{item}) {}

  const std::vector<std::string>& items() const { return items_; }

 private:
  static std::string Join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration:";
    for (const auto& item : items) out += "\n  - " + item;
    return out;
  }

  std::vector<std::string> items_;
};

}  // namespace dpdda

#endif  // DPDDA_ERRORS_H_
