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

#include "gpm/measurement.hpp"

#include <cmath>
#include <string>

#include "gpm/errors.hpp"

namespace gpm {

const char *to_string(Outcome o) { return o == Outcome::m ? "m" : "mbar"; }

void require_probability(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidProbability(std::string(name) + " = " + std::to_string(v) +
                                 " is outside [0, 1]");
    }
}

MeasurementPair::MeasurementPair(double p, double q, Direction direction)
    : p_(p), q_(q), direction_(direction) {
    require_probability(p, "p");
    require_probability(q, "q");
    kraus_m_ = {std::sqrt(1.0 - q), 0.0, 0.0, std::sqrt(1.0 - p)};
    kraus_mbar_ = {std::sqrt(q), 0.0, 0.0, std::sqrt(p)};
    if (direction.chi != 0.0 || direction.psi != 0.0) {
        const Operator2 r = rotation_for_direction(direction);
        const Operator2 r_dag = r.adjoint();
        kraus_m_ = r * kraus_m_ * r_dag;
        kraus_mbar_ = r * kraus_mbar_ * r_dag;
    }
}

Operator2 MeasurementPair::effect(Outcome o) const {
    const Operator2 &k = kraus(o);
    return k.adjoint() * k;
}

MeasurementPair build_measurement(double p, double q) {
    return {p, q, Direction::z()};
}

MeasurementPair build_measurement_along(double p, double q,
                                        const Direction &n) {
    return {p, q, n};
}

namespace {

double squared_norm(const std::array<cplx, 2> &v) {
    return std::norm(v[0]) + std::norm(v[1]);
}

} // namespace

OutcomeProbabilities outcome_probabilities(const PureState &state,
                                           const MeasurementPair &meas) {
    // ||M_x psi||^2 == <psi|E_x|psi>
    const double pm = squared_norm(meas.kraus(Outcome::m) * state.amplitudes());
    const double pmbar =
        squared_norm(meas.kraus(Outcome::mbar) * state.amplitudes());
    return {pm, pmbar};
}

PureState post_measurement_state(const PureState &state,
                                 const MeasurementPair &meas, Outcome outcome) {
    const auto v = meas.kraus(outcome) * state.amplitudes();
    const double prob = squared_norm(v);
    if (prob <= Tolerance::zero) {
        throw ZeroProbabilityOutcome(std::string("outcome ") +
                                     to_string(outcome) +
                                     " has zero probability for this state");
    }
    return {v[0], v[1]};
}

Outcome sample_outcome(const PureState &state, const MeasurementPair &meas,
                       RandomStream &rng) {
    const double u = rng.uniform();
    return u < outcome_probabilities(state, meas).mbar ? Outcome::mbar
                                                       : Outcome::m;
}

} // namespace gpm
