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

#include <cstdint>
#include <random>

namespace gpm {

/// Seeded, splittable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform variates are built from the top 53 bits of one engine
/// call, so traces are identical across standard-library implementations.
/// Substreams are keyed by (seed, index) through a SplitMix64 mix and never
/// depend on how many variates the parent has consumed.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    /// Independent stream for work item `index`.
    RandomStream substream(std::uint64_t index) const;

    /// Uniform on [0, 1); consumes exactly one engine call.
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

} // namespace gpm
