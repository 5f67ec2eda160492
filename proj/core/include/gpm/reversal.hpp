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

#include <array>
#include <cstdint>
#include <vector>

#include "gpm/algebra.hpp"
#include "gpm/measurement.hpp"
#include "gpm/rng.hpp"

namespace gpm {

/// Throws NonInvertibleMeasurement when p or q is within 1e-12 of 0 or 1.
void require_invertible(double p, double q);

/// M_x^{-1} for the pair's direction:
///   M_m^{-1}    = X M_m X / sqrt((1-p)(1-q))
///   M_mbar^{-1} = X M_mbar X / sqrt(p q)
/// conjugated by the direction's rotation.
Operator2 inverse_operator(const MeasurementPair &meas, Outcome outcome);

/// The two fail paths of the two-measurement protocol.
enum class FailPath {
    m_then_mbar, ///< M_mbar X M_m |psi>
    mbar_then_m, ///< M_m X M_mbar |psi>
};

/// One run of measure -> X -> measure -> (X on a repeated outcome).
struct ReversalRecord {
    Outcome first_outcome = Outcome::m;
    Outcome second_outcome = Outcome::m;
    bool success = false;
    PureState final_state = PureState::zero();
    /// Probability of the realized (first, second) outcome path.
    double path_probability = 0.0;
};

ReversalRecord run_reversal(const PureState &state, double p, double q,
                            RandomStream &rng);

/// (1-p)(1-q) + p q
double reversal_success_probability(double p, double q);

/// Normalized state left on a fail path. For m_then_mbar this is
///   sin(theta/2) e^{i phi} sqrt(q(1-p)) |0> + cos(theta/2) sqrt(p(1-q)) |1>
/// and mbar_then_m is the same expression with p and q exchanged.
/// Throws ZeroProbabilityOutcome when the path has probability <= 1e-14.
PureState fail_path_state(const PureState &state, double p, double q,
                          FailPath path = FailPath::m_then_mbar);

/// Aggregate of many protocol runs from one input state.
struct ReversalTally {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    /// Counts indexed by [first][second], outcome m = 0, mbar = 1.
    std::array<std::array<std::uint64_t, 2>, 2> paths{};
    /// max over successful runs of 1 - fidelity(final, input).
    double worst_success_infidelity = 0.0;
    /// max over failed runs of 1 - fidelity(final, fail_path_state).
    double worst_fail_mismatch = 0.0;

    ReversalTally &operator+=(const ReversalTally &rhs);
    double success_rate() const {
        return trials == 0 ? 0.0
                           : static_cast<double>(successes) /
                                 static_cast<double>(trials);
    }
};

/// Runs `trials` independent protocol runs. Trial blocks draw from
/// substreams of `seed`, so the tally is independent of `threads`.
ReversalTally run_reversal_trials(const PureState &state, double p, double q,
                                  std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads);

/// Fixed probe set: both poles plus n - 2 Fibonacci-sphere points.
std::vector<PureState> probe_states(std::size_t n);

struct ReversalSearchResult {
    /// (alpha, beta, gamma) in [0, 2 pi).
    std::array<double, 3> angles{};
    double worst_case_fidelity = 0.0;
};

/// Maximizes over R = R_z(alpha) R_y(beta) R_z(gamma) the minimum, over the
/// probe states, of fidelity(R X |fail>, |psi>), where |fail> is the
/// m_then_mbar fail-path state. A 32^3 grid is followed by coordinate
/// descent down to a 1e-8 step. Requires p, q in (0, 1) and n_states >= 16.
ReversalSearchResult deterministic_reversal_search(double p, double q,
                                                   std::size_t n_states);

/// The search objective for one angle triple.
double worst_case_recovery(const std::array<double, 3> &angles,
                           const std::vector<PureState> &inputs,
                           const std::vector<PureState> &x_completed_fail);

} // namespace gpm
