// Copyright 2026 The gpm Authors
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

namespace gpm {

/// Base class for every domain error raised by the library.
class Error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A probability argument lies outside [0, 1].
class InvalidProbability : public Error {
  public:
    using Error::Error;
};

/// Inversion requested for an operator with |det| <= 1e-14.
class SingularOperator : public Error {
  public:
    using Error::Error;
};

/// Post-measurement state requested for an outcome that cannot occur.
class ZeroProbabilityOutcome : public Error {
  public:
    using Error::Error;
};

/// Reversal requested with p or q at (or within 1e-12 of) 0 or 1.
class NonInvertibleMeasurement : public Error {
  public:
    using Error::Error;
};

/// Fisher information requested where the outcome distribution is
/// deterministic but the probability still moves with the parameters.
class DegenerateDistribution : public Error {
  public:
    using Error::Error;
};

/// The data carry no information about the requested parameters.
class NonIdentifiable : public Error {
  public:
    using Error::Error;
};

} // namespace gpm
