/**
 * Copyright 2026 The sppcert Authors
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

#include <stdexcept>
#include <string>

namespace sppcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability vector failed validation (negative mass, bad normalization).
class NotADistribution : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bound was requested outside the range where its criterion holds.
/// Distinct from a bound that evaluates to zero.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

/// analyze() was called without a second-order correlation value.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Background solve has no positive root for the requested target.
class NoSolution : public Error {
 public:
  using Error::Error;
};

}  // namespace sppcert
