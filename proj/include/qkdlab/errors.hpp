/* Copyright 2026 The qkdlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qkdlab {

// Invalid numeric input: probabilities outside [0,1], d >= 0.5, and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Zero Chernoff distance: no finite number of trials separates the hypotheses.
class UnreachableError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Both hypotheses are deterministic and different; a single trial decides.
class PerfectlyDistinguishableError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A Monte Carlo or analytic quantity has an empty support (nothing forwarded).
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::size_t line, std::string field,
              const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qkdlab
