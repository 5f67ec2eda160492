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
#include <optional>
#include <span>
#include <vector>

#include "gpm/algebra.hpp"

namespace gpm {

/// (theta, phi) of the measured state.
struct StateAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// Partial derivatives of P_m along a direction.
struct ProbabilityGradient {
    double d_theta = 0.0;
    double d_phi = 0.0;
};

/// Symmetric 2x2 Fisher matrix over (theta, phi). The single off-diagonal
/// entry stands for both F_theta_phi and F_phi_theta.
struct FisherMatrix {
    double f_tt = 0.0;
    double f_tp = 0.0;
    double f_pp = 0.0;

    double determinant() const { return f_tt * f_pp - f_tp * f_tp; }

    FisherMatrix &operator+=(const FisherMatrix &rhs) {
        f_tt += rhs.f_tt;
        f_tp += rhs.f_tp;
        f_pp += rhs.f_pp;
        return *this;
    }
    friend FisherMatrix operator*(double s, FisherMatrix f) {
        f.f_tt *= s;
        f.f_tp *= s;
        f.f_pp *= s;
        return f;
    }
};

/// dP_m/dtheta = ((q-p)/2)[sin(theta)cos(chi) - cos(theta)sin(chi)cos(phi-psi)]
/// dP_m/dphi   = ((q-p)/2) sin(theta) sin(chi) sin(phi-psi)
ProbabilityGradient prob_derivatives(const StateAngles &state,
                                     const Direction &n, double p, double q);

/// F_ij = dP_m/di * dP_m/dj / (P_m P_mbar).
///
/// When P_m P_mbar <= 1e-14 the matrix is zero if both derivatives are
/// below 1e-10 in magnitude; otherwise DegenerateDistribution is thrown.
FisherMatrix fisher_matrix(const StateAngles &state, const Direction &n,
                           double p, double q);

struct FisherSurfacePoint {
    double p = 0.0;
    double q = 0.0;
    FisherMatrix f;
};

/// fisher_matrix over a uniform grid_n x grid_n grid on [0,1]^2, ordered
/// with p as the slow index. Degenerate points carry NaN in all three
/// elements.
std::vector<FisherSurfacePoint> fisher_surface(double theta, double chi,
                                               double psi, double phi,
                                               std::size_t grid_n);

/// Single-parameter Cramer-Rao bounds 1/f_tt and 1/f_pp; +inf when the
/// element is below 1e-14.
struct CramerRaoBounds {
    double var_theta = 0.0;
    double var_phi = 0.0;
};

CramerRaoBounds cramer_rao(const FisherMatrix &f);

/// -(1-p)(1-q) ln[(1-p)(1-q)] - p q ln[p q], in nats, with 0 ln 0 = 0.
double reversal_entropy(double p, double q);

/// Outcome counts collected along one measurement axis.
struct DirectionCounts {
    Direction direction;
    std::uint64_t n_m = 0;
    std::uint64_t n_mbar = 0;
};

struct TomographyEstimate {
    double theta_hat = 0.0;
    double phi_hat = 0.0;
    std::uint64_t n_samples = 0;
    /// +inf when the summed Fisher information is singular in theta.
    double crb_variance_theta = 0.0;
    /// 0 when phi was held fixed; +inf when singular.
    double crb_variance_phi = 0.0;
    /// Optimum sits at theta = 0 or theta = pi.
    bool boundary_estimate = false;
};

/// Maximum-likelihood (theta, phi) from binomial counts along several axes,
/// or theta alone when `fixed_phi` is given.
///
/// One parameter: 129-point scan of [0, pi] then golden-section search in
/// the winning bracket, with the endpoints compared last. Two parameters:
/// Nelder-Mead started from the least-squares moment inversion of the
/// per-axis frequencies plus four fixed starts.
///
/// Throws NonIdentifiable when p == q (within 1e-12), or when phi is free
/// and no two axes are non-collinear. Throws std::invalid_argument on zero
/// total counts.
TomographyEstimate mle_estimate(std::span<const DirectionCounts> counts,
                                double p, double q,
                                std::optional<double> fixed_phi = std::nullopt);

/// Binomial log-likelihood used by mle_estimate.
double log_likelihood(std::span<const DirectionCounts> counts, double p,
                      double q, const StateAngles &state);

} // namespace gpm
