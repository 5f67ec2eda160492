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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "gpm/dilation.hpp"
#include "gpm/errors.hpp"
#include "gpm/measurement.hpp"
#include "gpm/rng.hpp"
#include "oracles.hpp"

using namespace gpm;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

Operator2 kraus_completeness(const Operator2 &km, const Operator2 &kb) {
    return km.adjoint() * km + kb.adjoint() * kb;
}

Operator2 block_from_quoted(double angle) {
    return Operator2{std::cos(angle), -1i * std::sin(angle), -1i * std::sin(angle),
                     std::cos(angle)};
}

} // namespace

TEST(NaimarkUnitary, TrivialMeasurementIsIdentity) {
    EXPECT_EQ(max_abs_diff(build_naimark_unitary(0.0, 0.0).u, Operator4::identity()), 0.0);
}

TEST(NaimarkUnitary, UnitaryOnRandomGrid) {
    RandomStream rng(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_TRUE(is_unitary(build_naimark_unitary(rng.uniform(), rng.uniform()).u));
    }
    EXPECT_THROW(build_naimark_unitary(1.2, 0.0), InvalidProbability);
}

TEST(ExtractKraus, ReproducesMeasurementOperators) {
    const DilationUnitary d = build_naimark_unitary(0.7, 0.3);
    const Operator2 km = extract_kraus(d, Outcome::m);
    const Operator2 kb = extract_kraus(d, Outcome::mbar);
    EXPECT_LT(max_abs_diff(km, Operator2{std::sqrt(0.7), 0.0, 0.0, std::sqrt(0.3)}), 1e-15);
    // i sqrt(q) Y sends |m> to -sqrt(q)|mbar>.
    EXPECT_LT(max_abs_diff(kb, Operator2{-std::sqrt(0.3), 0.0, 0.0, -std::sqrt(0.7)}), 1e-15);
    const MeasurementPair meas = build_measurement(0.7, 0.3);
    EXPECT_LT(max_abs_diff(km, meas.kraus(Outcome::m)), 1e-12);
    EXPECT_LT(phase_distance(kb, meas.kraus(Outcome::mbar)), 1e-12);
}

TEST(ExtractKraus, NoSwitchingGivesZeroOperator) {
    EXPECT_EQ(max_abs_diff(extract_kraus(build_naimark_unitary(0.0, 0.0), Outcome::mbar),
                           Operator2::zero()),
              0.0);
}

TEST(ExtractKraus, CompletenessForEveryConstruction) {
    RandomStream rng(2);
    for (int i = 0; i < 500; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        const TunnelElements t = pulse_params(p, q, 0.7);
        const DilationUnitary paths[] = {
            build_naimark_unitary(p, q),
            {gate_product(gate_decomposition(p, q)), p, q},
            doublewell_propagator({3.0, t.t0, t.t1, 0.7}),
        };
        for (const auto &d : paths) {
            EXPECT_LT(max_abs_diff(kraus_completeness(extract_kraus(d, Outcome::m),
                                                      extract_kraus(d, Outcome::mbar)),
                                   Operator2::identity()),
                      1e-12);
        }
    }
}

TEST(DilationStatistics, BornRuleMatchesPovm) {
    RandomStream rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        const PureState psi = oracle::random_state(rng);
        const auto via_ancilla = dilation_outcome_probabilities(build_naimark_unitary(p, q), psi);
        const auto direct = outcome_probabilities(psi, build_measurement(p, q));
        EXPECT_NEAR(via_ancilla.m, direct.m, 1e-12);
        EXPECT_NEAR(via_ancilla.mbar, direct.mbar, 1e-12);
    }
}

TEST(GateDecomposition, ProductEqualsUnitary) {
    RandomStream rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        const auto gates = gate_decomposition(p, q);
        ASSERT_EQ(gates.size(), 4U);
        EXPECT_LT(max_abs_diff(gate_product(gates), build_naimark_unitary(p, q).u), 1e-12);
    }
}

TEST(GateDecomposition, ZeroQMakesFirstConditionalTrivial) {
    const auto gates = gate_decomposition(0.6, 0.0);
    EXPECT_EQ(gates[0].name, "X(x)I");
    EXPECT_EQ(max_abs_diff(gates[1].matrix, Operator4::identity()), 0.0);
    EXPECT_EQ(max_abs_diff(gates[0].matrix, gates[2].matrix), 0.0);
}

TEST(GateDecomposition, EqualPQUsesSameRotation) {
    const auto gates = gate_decomposition(0.4, 0.4);
    EXPECT_EQ(max_abs_diff(gates[1].matrix, gates[3].matrix), 0.0);
}

TEST(DoubleWell, ZeroDurationIsIdentity) {
    const DilationUnitary d = doublewell_propagator({7.0, 1.0, 2.0, 0.0});
    EXPECT_LT(max_abs_diff(d.u, Operator4::identity()), 1e-15);
    EXPECT_THROW(doublewell_propagator({7.0, 1.0, 2.0, -1.0}), std::invalid_argument);
}

TEST(DoubleWell, SymmetricTunnelingGivesEqualBlocks) {
    const DilationUnitary d = doublewell_propagator({4.0, 1.3, 1.3, 2.2});
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            EXPECT_LT(std::abs(d.u(a, b) - d.u(2 + a, 2 + b)), 1e-12);
        }
    }
    EXPECT_NEAR(d.p, d.q, 1e-15);
}

TEST(DoubleWell, MatchesQuotedRotatingFrameForm) {
    RandomStream rng(5);
    for (int i = 0; i < 200; ++i) {
        const DoubleWellParams params{rng.uniform(0.0, 100.0), rng.uniform(0.0, 5.0),
                                      rng.uniform(0.0, 5.0), rng.uniform(0.0, 10.0)};
        const Operator4 quoted =
            kron(Operator2{1.0, 0.0, 0.0, 0.0}, block_from_quoted(params.t0 * params.tau / 2)) +
            kron(Operator2{0.0, 0.0, 0.0, 1.0}, block_from_quoted(params.t1 * params.tau / 2));
        EXPECT_LT(max_abs_diff(doublewell_propagator(params).u, quoted), 1e-12);
    }
}

TEST(DoubleWell, ClosedFormMatchesSeriesExponential) {
    RandomStream rng(6);
    for (int i = 0; i < 500; ++i) {
        const DoubleWellParams params{rng.uniform(0.0, 100.0), rng.uniform(0.0, 5.0),
                                      rng.uniform(0.0, 5.0), rng.uniform(0.0, 10.0)};
        const Operator4 h = doublewell_hamiltonian(params);
        const Operator4 evolve = oracle::series_expm(h * cplx{0.0, -params.tau});
        const Operator4 frame = oracle::series_expm(
            kron(pauli_z(), Operator2::identity()) * cplx{0.0, -params.nu * params.tau / 2});
        EXPECT_LT(max_abs_diff(doublewell_propagator(params).u, frame * evolve), 1e-10)
            << "nu=" << params.nu << " t0=" << params.t0 << " t1=" << params.t1
            << " tau=" << params.tau;
    }
}

TEST(DoubleWell, AncillaRelabelingGivesNaimarkUnitary) {
    RandomStream rng(7);
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        const double tau = rng.uniform(0.1, 3.0);
        const TunnelElements t = pulse_params(p, q, tau);
        const DilationUnitary well = doublewell_propagator({rng.uniform(0.0, 50.0), t.t0, t.t1, tau});
        EXPECT_NEAR(well.p, p, 1e-12);
        EXPECT_NEAR(well.q, q, 1e-12);
        EXPECT_LT(max_abs_diff(to_naimark_ancilla_basis(well.u), build_naimark_unitary(p, q).u),
                  1e-12);
    }
}

TEST(PulseParams, BranchValues) {
    EXPECT_EQ(pulse_params(0.3, 0.0, 2.0).t0, 0.0);
    EXPECT_NEAR(pulse_params(0.3, 1.0, 1.0).t0, pi, 1e-15);
    EXPECT_THROW(pulse_params(0.3, 0.2, 0.0), std::invalid_argument);
}

TEST(PulseParams, RoundTripReproducesPovm) {
    const TunnelElements t = pulse_params(0.8, 0.2, 1.0);
    const DilationUnitary well = doublewell_propagator({10.0, t.t0, t.t1, 1.0});
    const MeasurementPair meas = build_measurement(0.8, 0.2);
    for (const Outcome o : {Outcome::m, Outcome::mbar}) {
        EXPECT_LT(phase_distance(extract_kraus(well, o), meas.kraus(o)), 1e-12);
    }
    RandomStream rng(8);
    for (int i = 0; i < 100; ++i) {
        const PureState psi = oracle::random_state(rng);
        EXPECT_NEAR(dilation_outcome_probabilities(well, psi).mbar,
                    outcome_probabilities(psi, meas).mbar, 1e-12);
    }
}
