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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gpm/errors.hpp"
#include "gpm/measurement.hpp"
#include "gpm/reversal.hpp"
#include "gpm/rng.hpp"
#include "oracles.hpp"

using namespace gpm;
using std::numbers::pi;

namespace {

double five_sigma(double rate, double n) { return 5.0 * std::sqrt(rate * (1.0 - rate) / n); }

// Worst-case recovery fidelity on the probe set for the frozen search below,
// computed by an independent grid + Nelder-Mead search (numpy/scipy) over the
// same 64 probe states.
constexpr double kScipyWorstCase_p09_q01 = 0.36063809553063264;

} // namespace

TEST(InverseOperator, UndoesBothKrausOperators) {
    for (const Direction n : {Direction::z(), Direction{1.1, 0.4}}) {
        const MeasurementPair meas = build_measurement_along(0.3, 0.2, n);
        for (const Outcome o : {Outcome::m, Outcome::mbar}) {
            EXPECT_LT(max_abs_diff(inverse_operator(meas, o) * meas.kraus(o),
                                   Operator2::identity()),
                      1e-12);
        }
    }
}

TEST(InverseOperator, HalfHalfIsScaledIdentity) {
    const Operator2 inv = inverse_operator(build_measurement(0.5, 0.5), Outcome::m);
    EXPECT_LT(max_abs_diff(inv, Operator2::identity() * std::sqrt(2.0)), 1e-12);
}

TEST(InverseOperator, EndpointsAreRejected) {
    EXPECT_THROW(inverse_operator(build_measurement(1.0, 0.5), Outcome::m),
                 NonInvertibleMeasurement);
    EXPECT_THROW(inverse_operator(build_measurement(0.5, 0.0), Outcome::mbar),
                 NonInvertibleMeasurement);
    EXPECT_THROW(inverse_operator(build_measurement(0.5, 1.0 - 1e-13), Outcome::m),
                 NonInvertibleMeasurement);
    EXPECT_NO_THROW(inverse_operator(build_measurement(0.5, 1e-9), Outcome::m));
}

TEST(ReversalSuccessProbability, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(reversal_success_probability(0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(reversal_success_probability(0.5, 0.5), 0.5);
    EXPECT_NEAR(reversal_success_probability(0.9, 0.1), 0.18, 1e-15);
    EXPECT_NEAR(reversal_success_probability(0.3, 0.2), 0.62, 1e-15);
}

TEST(ReversalSuccessProbability, MatchesMonteCarlo) {
    // (0.9, 0.1): (1-p)(1-q) + pq = 0.09 + 0.09.
    const double exact = reversal_success_probability(0.9, 0.1);
    const ReversalTally t =
        run_reversal_trials(state_from_angles(0.8, 1.9), 0.9, 0.1, 1000000, 5, 1);
    EXPECT_LE(std::abs(t.success_rate() - exact), five_sigma(exact, 1e6));
}

TEST(ReversalSuccessProbability, Symmetries) {
    RandomStream rng(8);
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform();
        const double q = rng.uniform();
        const double r = reversal_success_probability(p, q);
        EXPECT_NEAR(r, reversal_success_probability(q, p), 1e-15);
        EXPECT_NEAR(r, reversal_success_probability(1 - p, 1 - q), 1e-15);
        EXPECT_NEAR(r, 1 - p - q + 2 * p * q, 1e-15);
    }
}

TEST(RunReversal, RecordInvariants) {
    RandomStream rng(77);
    RandomStream states(78);
    for (int i = 0; i < 20000; ++i) {
        const PureState psi = oracle::random_state(states);
        const ReversalRecord rec = run_reversal(psi, 0.35, 0.7, rng);
        EXPECT_EQ(rec.success, rec.first_outcome == rec.second_outcome);
        if (rec.success) {
            EXPECT_GE(fidelity(rec.final_state, psi), 1.0 - 1e-10);
        } else {
            const FailPath path = rec.first_outcome == Outcome::m ? FailPath::m_then_mbar
                                                                  : FailPath::mbar_then_m;
            EXPECT_GE(fidelity(rec.final_state, fail_path_state(psi, 0.35, 0.7, path)),
                      1.0 - 1e-10);
        }
        EXPECT_GT(rec.path_probability, 0.0);
        EXPECT_LE(rec.path_probability, 1.0);
    }
}

TEST(RunReversal, EndpointsAreRejected) {
    RandomStream rng(1);
    EXPECT_THROW(run_reversal(PureState::zero(), 1.0, 0.5, rng), NonInvertibleMeasurement);
    EXPECT_THROW(run_reversal_trials(PureState::zero(), 0.0, 0.5, 10, 1, 1),
                 NonInvertibleMeasurement);
}

TEST(RunReversal, SuccessRateNearClosedForm) {
    for (const auto &[p, q] : std::vector<std::pair<double, double>>{{0.3, 0.2}, {0.5, 0.5}}) {
        const double exact = reversal_success_probability(p, q);
        const ReversalTally t =
            run_reversal_trials(state_from_angles(2.0, 0.5), p, q, 1000000, 1234, 1);
        EXPECT_LE(std::abs(t.success_rate() - exact), five_sigma(exact, 1e6));
        EXPECT_LE(t.worst_success_infidelity, 1e-10);
        EXPECT_LE(t.worst_fail_mismatch, 1e-10);
    }
}

TEST(RunReversal, SuccessRateIsStateIndependent) {
    RandomStream states(404);
    const double p = 0.15;
    const double q = 0.6;
    const double exact = reversal_success_probability(p, q);
    for (int i = 0; i < 50; ++i) {
        const ReversalTally t =
            run_reversal_trials(oracle::random_state(states), p, q, 100000, 500 + i, 1);
        EXPECT_LE(std::abs(t.success_rate() - exact), five_sigma(exact, 1e5)) << "state " << i;
    }
}

TEST(RunReversal, TallyIndependentOfThreadCount) {
    const PureState psi = state_from_angles(1.0, 1.0);
    const ReversalTally one = run_reversal_trials(psi, 0.3, 0.6, 300000, 9, 1);
    const ReversalTally many = run_reversal_trials(psi, 0.3, 0.6, 300000, 9, 4);
    EXPECT_EQ(one.successes, many.successes);
    EXPECT_EQ(one.paths, many.paths);
    EXPECT_EQ(one.worst_success_infidelity, many.worst_success_infidelity);
}

TEST(PathIdentities, RepeatedOutcomeProbabilitiesAreStateIndependent) {
    RandomStream rng(55);
    const Operator2 x = pauli_x();
    for (int i = 0; i < 500; ++i) {
        const double p = rng.uniform(0.01, 0.99);
        const double q = rng.uniform(0.01, 0.99);
        const MeasurementPair meas = build_measurement(p, q);
        const PureState psi = oracle::random_state(rng);
        const Operator2 &m = meas.kraus(Outcome::m);
        const Operator2 &mb = meas.kraus(Outcome::mbar);
        const auto path_m = m * x * m * psi.amplitudes();
        const auto path_mb = mb * x * mb * psi.amplitudes();
        EXPECT_NEAR(std::norm(path_m[0]) + std::norm(path_m[1]), (1 - p) * (1 - q), 1e-12);
        EXPECT_NEAR(std::norm(path_mb[0]) + std::norm(path_mb[1]), p * q, 1e-12);
        // Amplitude for returning to |psi> after the final X.
        const auto ret = x * path_m;
        const cplx overlap = std::conj(psi.amp0()) * ret[0] + std::conj(psi.amp1()) * ret[1];
        EXPECT_NEAR(std::abs(overlap - std::sqrt((1 - p) * (1 - q))), 0.0, 1e-12);
        // With the inverse operator the repeated path is the identity up to scale.
        const Operator2 undo = inverse_operator(meas, Outcome::m) * m;
        EXPECT_LT(max_abs_diff(undo, Operator2::identity()), 1e-12);
    }
}

TEST(FailPathState, HalfHalfReducesToX) {
    RandomStream rng(66);
    for (int i = 0; i < 100; ++i) {
        const PureState psi = oracle::random_state(rng);
        EXPECT_NEAR(fidelity(fail_path_state(psi, 0.5, 0.5), psi.apply(pauli_x())), 1.0,
                    1e-12);
    }
}

TEST(FailPathState, EquatorAmplitudes) {
    const PureState f = fail_path_state(state_from_angles(pi / 2, 0.0), 0.8, 0.2);
    const double norm = std::sqrt(0.2 * 0.2 + 0.8 * 0.8);
    EXPECT_NEAR(std::abs(f.amp0() - 0.2 / norm), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.amp1() - 0.8 / norm), 0.0, 1e-12);
}

TEST(FailPathState, MatchesClosedForm) {
    RandomStream rng(67);
    for (int i = 0; i < 500; ++i) {
        const double theta = rng.uniform(0.0, pi);
        const double phi = rng.uniform(0.0, 2 * pi);
        const double p = rng.uniform(0.01, 0.99);
        const double q = rng.uniform(0.01, 0.99);
        const PureState expected(
            std::sin(theta / 2) * std::polar(1.0, phi) * std::sqrt(q * (1 - p)),
            std::cos(theta / 2) * std::sqrt(p * (1 - q)));
        const PureState psi = state_from_angles(theta, phi);
        EXPECT_NEAR(fidelity(fail_path_state(psi, p, q), expected), 1.0, 1e-12);
        // The other fail path is the same expression with p and q exchanged.
        EXPECT_NEAR(fidelity(fail_path_state(psi, p, q, FailPath::mbar_then_m),
                             fail_path_state(psi, q, p, FailPath::m_then_mbar)),
                    1.0, 1e-12);
    }
}

TEST(FailPathState, TwoPathsCoincideOnlyWhenPEqualsQ) {
    const PureState psi = state_from_angles(pi / 2, 0.0);
    EXPECT_NEAR(fidelity(fail_path_state(psi, 0.3, 0.3, FailPath::m_then_mbar),
                         fail_path_state(psi, 0.3, 0.3, FailPath::mbar_then_m)),
                1.0, 1e-12);
    // (0.2, 0.8) vs (0.8, 0.2) after normalization: overlap 0.32 / 0.68.
    const double f = fidelity(fail_path_state(psi, 0.8, 0.2, FailPath::m_then_mbar),
                              fail_path_state(psi, 0.8, 0.2, FailPath::mbar_then_m));
    EXPECT_NEAR(f, (0.32 / 0.68) * (0.32 / 0.68), 1e-12);
}

TEST(FailPathState, VanishingPathThrows) {
    EXPECT_THROW(fail_path_state(PureState::zero(), 0.0, 0.5), ZeroProbabilityOutcome);
}

TEST(ProbeStates, IncludesPolesAndIsNormalized) {
    const auto states = probe_states(40);
    ASSERT_EQ(states.size(), 40U);
    EXPECT_NEAR(fidelity(states[0], PureState::zero()), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(states[1], PureState::one()), 1.0, 1e-15);
    for (const auto &s : states) {
        EXPECT_NEAR(std::norm(s.amp0()) + std::norm(s.amp1()), 1.0, 1e-14);
    }
}

TEST(DeterministicReversalSearch, EqualPQRecoversAtOrigin) {
    const ReversalSearchResult r = deterministic_reversal_search(0.5, 0.5, 32);
    EXPECT_NEAR(r.worst_case_fidelity, 1.0, 1e-8);
    for (const double a : r.angles) {
        EXPECT_EQ(a, 0.0);
    }
    const ReversalSearchResult r2 = deterministic_reversal_search(0.27, 0.27, 16);
    EXPECT_NEAR(r2.worst_case_fidelity, 1.0, 1e-8);
}

TEST(DeterministicReversalSearch, StronglyAsymmetricRegression) {
    const ReversalSearchResult r = deterministic_reversal_search(0.9, 0.1, 64);
    EXPECT_LT(r.worst_case_fidelity, 0.99);
    // Never below the X-completed path without correction, whose worst case
    // over all states is 4ab / (a + b)^2 with a = sqrt(q(1-p)), b = sqrt(p(1-q)).
    const auto inputs = probe_states(64);
    std::vector<PureState> completed;
    for (const auto &s : inputs) {
        completed.push_back(fail_path_state(s, 0.9, 0.1).apply(pauli_x()));
    }
    EXPECT_GE(r.worst_case_fidelity, worst_case_recovery({0.0, 0.0, 0.0}, inputs, completed));
    EXPECT_GE(r.worst_case_fidelity, 0.36 - 1e-12);
    // Agrees with the independent search to within its optimizer slack.
    EXPECT_NEAR(r.worst_case_fidelity, kScipyWorstCase_p09_q01, 5e-4);
}

TEST(DeterministicReversalSearch, UnequalPQNeverReversible) {
    RandomStream rng(12);
    for (int i = 0; i < 4; ++i) {
        const double p = rng.uniform(0.05, 0.95);
        double q = rng.uniform(0.05, 0.95);
        if (std::abs(p - q) < 0.05) {
            q = p > 0.5 ? p - 0.3 : p + 0.3;
        }
        EXPECT_LT(deterministic_reversal_search(p, q, 16).worst_case_fidelity, 1.0 - 1e-4)
            << "p=" << p << " q=" << q;
    }
}

TEST(DeterministicReversalSearch, PreconditionsEnforced) {
    EXPECT_THROW(deterministic_reversal_search(0.0, 0.5, 32), InvalidProbability);
    EXPECT_THROW(deterministic_reversal_search(0.4, 0.5, 8), std::invalid_argument);
}
