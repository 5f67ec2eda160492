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

#include "gpm/algebra.hpp"
#include "gpm/rng.hpp"

namespace gpm {

/// m: no switching event. mbar: switching (tunneling) event.
enum class Outcome { m, mbar };

const char *to_string(Outcome o);

/// Two-outcome generalized partial measurement.
///
/// Along z the Kraus operators are
///   M_m    = sqrt(1-q)|0><0| + sqrt(1-p)|1><1|
///   M_mbar = sqrt(q)  |0><0| + sqrt(p)  |1><1|
/// where q (p) is the switching probability from |0> (|1>). Along another
/// axis both are conjugated by rotation_for_direction.
class MeasurementPair {
  public:
    MeasurementPair(double p, double q, Direction direction);

    double p() const { return p_; }
    double q() const { return q_; }
    const Direction &direction() const { return direction_; }

    const Operator2 &kraus(Outcome o) const {
        return o == Outcome::m ? kraus_m_ : kraus_mbar_;
    }
    /// E_x = M_x^dagger M_x
    Operator2 effect(Outcome o) const;

  private:
    double p_;
    double q_;
    Direction direction_;
    Operator2 kraus_m_;
    Operator2 kraus_mbar_;
};

/// Throws InvalidProbability unless 0 <= v <= 1.
void require_probability(double v, const char *name);

MeasurementPair build_measurement(double p, double q);
MeasurementPair build_measurement_along(double p, double q,
                                        const Direction &n);

struct OutcomeProbabilities {
    double m = 0.0;
    double mbar = 0.0;

    double of(Outcome o) const { return o == Outcome::m ? m : mbar; }
};

/// Born-rule probabilities <psi|E_x|psi>.
OutcomeProbabilities outcome_probabilities(const PureState &state,
                                           const MeasurementPair &meas);

/// M_x|psi> / sqrt(P_x), with no re-phasing. Throws ZeroProbabilityOutcome
/// when P_x <= 1e-14.
PureState post_measurement_state(const PureState &state,
                                 const MeasurementPair &meas, Outcome outcome);

/// Draws mbar with probability P_mbar using exactly one uniform variate.
Outcome sample_outcome(const PureState &state, const MeasurementPair &meas,
                       RandomStream &rng);

} // namespace gpm
