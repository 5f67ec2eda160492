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

// Independent reference computations used only by tests. Nothing here calls
// the closed forms it is used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "gpm/algebra.hpp"
#include "gpm/measurement.hpp"
#include "gpm/rng.hpp"

namespace gpm::oracle {

/// exp(A) by a 20-term Taylor series with scaling and squaring
/// (||A||_1 / 2^s < 0.5).
template <std::size_t N> SquareMatrix<N> series_expm(const SquareMatrix<N> &a) {
    double norm1 = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            col += std::abs(a(i, j));
        }
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale >= 0.5) {
        scale /= 2.0;
        ++squarings;
    }
    const SquareMatrix<N> scaled = a * cplx{scale, 0.0};
    SquareMatrix<N> term = SquareMatrix<N>::identity();
    SquareMatrix<N> sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = term * scaled * cplx{1.0 / k, 0.0};
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
    }
    return sum;
}

/// P_m from the rotated Kraus operators at (theta, phi).
inline double p_m(double theta, double phi, const MeasurementPair &meas) {
    return outcome_probabilities(state_from_angles(theta, phi), meas).m;
}

/// Central finite differences of P_m.
struct FdGradient {
    double d_theta;
    double d_phi;
};

inline FdGradient fd_gradient(double theta, double phi, const MeasurementPair &meas,
                              double h = 1e-6) {
    return {(p_m(theta + h, phi, meas) - p_m(theta - h, phi, meas)) / (2.0 * h),
            (p_m(theta, phi + h, meas) - p_m(theta, phi - h, meas)) / (2.0 * h)};
}

/// Richardson-extrapolated central differences of P_m (fourth order, so a
/// large step keeps round-off small).
inline FdGradient richardson_gradient(double theta, double phi, const MeasurementPair &meas,
                                      double h = 1e-3) {
    const FdGradient wide = fd_gradient(theta, phi, meas, h);
    const FdGradient narrow = fd_gradient(theta, phi, meas, h / 2.0);
    return {(4.0 * narrow.d_theta - wide.d_theta) / 3.0,
            (4.0 * narrow.d_phi - wide.d_phi) / 3.0};
}

/// Fisher elements built from finite differences of outcome_probabilities.
struct FdFisher {
    double f_tt;
    double f_tp;
    double f_pp;
};

inline FdFisher fd_fisher(double theta, double phi, const MeasurementPair &meas) {
    const FdGradient g = richardson_gradient(theta, phi, meas);
    const double pm = p_m(theta, phi, meas);
    const double denom = pm * (1.0 - pm);
    return {g.d_theta * g.d_theta / denom, g.d_theta * g.d_phi / denom,
            g.d_phi * g.d_phi / denom};
}

/// Monte Carlo mean of a score product and its standard error.
struct McEstimate {
    double mean;
    double std_error;
};

/// Samples outcomes and averages s_i * s_j, where the score of outcome x is
/// d ln P_x. `which` selects (0,0)=tt, (0,1)=tp, (1,1)=pp.
inline McEstimate mc_fisher_element(double theta, double phi,
                                    const MeasurementPair &meas, int i, int j,
                                    std::uint64_t n, RandomStream &rng) {
    const FdGradient g = fd_gradient(theta, phi, meas);
    const PureState psi = state_from_angles(theta, phi);
    const OutcomeProbabilities probs = outcome_probabilities(psi, meas);
    const double dm[2] = {g.d_theta, g.d_phi};
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
        const Outcome o = sample_outcome(psi, meas, rng);
        // d ln P_m = dP/P_m, d ln P_mbar = -dP/P_mbar
        const double denom = o == Outcome::m ? probs.m : -probs.mbar;
        const double v = (dm[i] / denom) * (dm[j] / denom);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - mean * mean;
    return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(n))};
}

/// Random unit-norm state, uniform on the Bloch sphere.
inline PureState random_state(RandomStream &rng) {
    const double z = rng.uniform(-1.0, 1.0);
    return state_from_angles(std::acos(z), rng.uniform(0.0, 2.0 * std::numbers::pi));
}

inline Direction random_direction(RandomStream &rng) {
    return {std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * std::numbers::pi)};
}

} // namespace gpm::oracle
