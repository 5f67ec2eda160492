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

#include "gpm/fisher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gpm/errors.hpp"
#include "gpm/measurement.hpp"

namespace gpm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Log-likelihood against pre-built measurement pairs.
double log_likelihood_with(std::span<const DirectionCounts> counts,
                           std::span<const MeasurementPair> pairs,
                           const StateAngles &state) {
    const PureState psi = state_from_angles(state.theta, state.phi);
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const OutcomeProbabilities probs = outcome_probabilities(psi, pairs[i]);
        const auto term = [](std::uint64_t n, double prob) {
            if (n == 0) {
                return 0.0;
            }
            return prob > 0.0 ? static_cast<double>(n) * std::log(prob) : -kInf;
        };
        total += term(counts[i].n_m, probs.m) + term(counts[i].n_mbar, probs.mbar);
    }
    return total;
}

template <typename F>
double golden_section_max(F &&f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

using Point2 = std::array<double, 2>;

// Minimizes f over R^2.
template <typename F>
std::pair<Point2, double> nelder_mead(F &&f, Point2 start, double step) {
    std::array<Point2, 3> simplex{start, {start[0] + step, start[1]},
                                  {start[0], start[1] + step}};
    std::array<double, 3> values{};
    for (std::size_t i = 0; i < 3; ++i) {
        values[i] = f(simplex[i]);
    }
    const auto lerp = [](const Point2 &a, const Point2 &b, double t) {
        return Point2{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };

    for (int iter = 0; iter < 5000; ++iter) {
        std::array<std::size_t, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t mid = order[1];
        const std::size_t worst = order[2];

        const double size =
            std::max({std::abs(simplex[mid][0] - simplex[best][0]),
                      std::abs(simplex[mid][1] - simplex[best][1]),
                      std::abs(simplex[worst][0] - simplex[best][0]),
                      std::abs(simplex[worst][1] - simplex[best][1])});
        if (size < 1e-11) {
            break;
        }

        const Point2 centroid = lerp(simplex[best], simplex[mid], 0.5);
        const Point2 reflected = lerp(simplex[worst], centroid, 2.0);
        const double f_r = f(reflected);
        if (f_r < values[best]) {
            const Point2 expanded = lerp(simplex[worst], centroid, 3.0);
            const double f_e = f(expanded);
            if (f_e < f_r) {
                simplex[worst] = expanded;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_r;
            }
            continue;
        }
        if (f_r < values[mid]) {
            simplex[worst] = reflected;
            values[worst] = f_r;
            continue;
        }
        const bool outside = f_r < values[worst];
        const Point2 contracted = outside ? lerp(simplex[worst], centroid, 1.5)
                                          : lerp(simplex[worst], centroid, 0.5);
        const double f_c = f(contracted);
        if (f_c < std::min(f_r, values[worst])) {
            simplex[worst] = contracted;
            values[worst] = f_c;
            continue;
        }
        for (const std::size_t i : {mid, worst}) {
            simplex[i] = lerp(simplex[best], simplex[i], 0.5);
            values[i] = f(simplex[i]);
        }
    }
    const auto it = std::min_element(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(it - values.begin());
    return {simplex[k], values[k]};
}

// Least-squares Bloch vector from n_i . r = c_i, then its angles.
StateAngles moment_inversion(std::span<const DirectionCounts> counts, double p,
                             double q) {
    std::array<std::array<double, 3>, 3> ata{};
    std::array<double, 3> atb{};
    for (const auto &c : counts) {
        const double total = static_cast<double>(c.n_m + c.n_mbar);
        if (total == 0.0) {
            continue;
        }
        const double freq = static_cast<double>(c.n_mbar) / total;
        // P_mbar = (p+q)/2 + ((q-p)/2) n.r
        const double proj = std::clamp((2.0 * freq - p - q) / (q - p), -1.0, 1.0);
        const auto n = c.direction.unit_vector();
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                ata[i][j] += total * n[i] * n[j];
            }
            atb[i] += total * n[i] * proj;
        }
    }
    // Small ridge keeps the normal equations solvable with two axes.
    double scale = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        scale = std::max(scale, ata[i][i]);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        ata[i][i] += 1e-9 * scale;
    }
    // Gaussian elimination with partial pivoting.
    std::array<double, 3> r{};
    {
        auto a = ata;
        auto b = atb;
        for (std::size_t col = 0; col < 3; ++col) {
            std::size_t piv = col;
            for (std::size_t row = col + 1; row < 3; ++row) {
                if (std::abs(a[row][col]) > std::abs(a[piv][col])) {
                    piv = row;
                }
            }
            std::swap(a[col], a[piv]);
            std::swap(b[col], b[piv]);
            if (std::abs(a[col][col]) == 0.0) {
                return {kPi / 2.0, 0.0};
            }
            for (std::size_t row = col + 1; row < 3; ++row) {
                const double f = a[row][col] / a[col][col];
                for (std::size_t k = col; k < 3; ++k) {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
        for (std::size_t i = 3; i-- > 0;) {
            double acc = b[i];
            for (std::size_t k = i + 1; k < 3; ++k) {
                acc -= a[i][k] * r[k];
            }
            r[i] = acc / a[i][i];
        }
    }
    const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (norm < 1e-12) {
        return {kPi / 2.0, 0.0};
    }
    return {std::acos(std::clamp(r[2] / norm, -1.0, 1.0)), std::atan2(r[1], r[0])};
}

bool has_non_collinear_pair(std::span<const DirectionCounts> counts) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto a = counts[i].direction.unit_vector();
        for (std::size_t j = i + 1; j < counts.size(); ++j) {
            const auto b = counts[j].direction.unit_vector();
            const double cx = a[1] * b[2] - a[2] * b[1];
            const double cy = a[2] * b[0] - a[0] * b[2];
            const double cz = a[0] * b[1] - a[1] * b[0];
            if (std::sqrt(cx * cx + cy * cy + cz * cz) > 1e-6) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

ProbabilityGradient prob_derivatives(const StateAngles &state,
                                     const Direction &n, double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    const double half = (q - p) / 2.0;
    const double dphi = state.phi - n.psi;
    return {half * (std::sin(state.theta) * std::cos(n.chi) -
                    std::cos(state.theta) * std::sin(n.chi) * std::cos(dphi)),
            half * std::sin(state.theta) * std::sin(n.chi) * std::sin(dphi)};
}

FisherMatrix fisher_matrix(const StateAngles &state, const Direction &n,
                           double p, double q) {
    const ProbabilityGradient g = prob_derivatives(state, n, p, q);
    const OutcomeProbabilities probs = outcome_probabilities(
        state_from_angles(state.theta, state.phi), build_measurement_along(p, q, n));
    const double denom = probs.m * probs.mbar;
    if (denom <= Tolerance::zero) {
        if (std::abs(g.d_theta) < 1e-10 && std::abs(g.d_phi) < 1e-10) {
            return {};
        }
        throw DegenerateDistribution(
            "outcome distribution is deterministic but depends on (theta, phi)");
    }
    return {g.d_theta * g.d_theta / denom, g.d_theta * g.d_phi / denom,
            g.d_phi * g.d_phi / denom};
}

std::vector<FisherSurfacePoint> fisher_surface(double theta, double chi,
                                               double psi, double phi,
                                               std::size_t grid_n) {
    if (grid_n < 2) {
        throw std::invalid_argument("fisher_surface needs grid_n >= 2");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const StateAngles state{theta, phi};
    const Direction n{chi, psi};
    const double last = static_cast<double>(grid_n - 1);

    std::vector<FisherSurfacePoint> out;
    out.reserve(grid_n * grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double p = static_cast<double>(i) / last;
        for (std::size_t j = 0; j < grid_n; ++j) {
            const double q = static_cast<double>(j) / last;
            FisherSurfacePoint pt{p, q, {}};
            try {
                pt.f = fisher_matrix(state, n, p, q);
            } catch (const DegenerateDistribution &) {
                pt.f = {nan, nan, nan};
            }
            out.push_back(pt);
        }
    }
    return out;
}

CramerRaoBounds cramer_rao(const FisherMatrix &f) {
    return {f.f_tt < Tolerance::zero ? kInf : 1.0 / f.f_tt,
            f.f_pp < Tolerance::zero ? kInf : 1.0 / f.f_pp};
}

double reversal_entropy(double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    return -x_log_x((1.0 - p) * (1.0 - q)) - x_log_x(p * q);
}

double log_likelihood(std::span<const DirectionCounts> counts, double p,
                      double q, const StateAngles &state) {
    std::vector<MeasurementPair> pairs;
    pairs.reserve(counts.size());
    for (const auto &c : counts) {
        pairs.push_back(build_measurement_along(p, q, c.direction));
    }
    return log_likelihood_with(counts, pairs, state);
}

TomographyEstimate mle_estimate(std::span<const DirectionCounts> counts,
                                double p, double q,
                                std::optional<double> fixed_phi) {
    require_probability(p, "p");
    require_probability(q, "q");
    if (std::abs(p - q) <= Tolerance::exact) {
        throw NonIdentifiable("p == q: outcome statistics do not depend on the state");
    }
    std::uint64_t total = 0;
    for (const auto &c : counts) {
        total += c.n_m + c.n_mbar;
    }
    if (total == 0) {
        throw std::invalid_argument("mle_estimate needs at least one count");
    }
    if (!fixed_phi && !has_non_collinear_pair(counts)) {
        throw NonIdentifiable("estimating phi needs two non-collinear directions");
    }

    std::vector<MeasurementPair> pairs;
    pairs.reserve(counts.size());
    for (const auto &c : counts) {
        pairs.push_back(build_measurement_along(p, q, c.direction));
    }
    const auto loglik = [&](double theta, double phi) {
        return log_likelihood_with(counts, pairs, {theta, phi});
    };

    TomographyEstimate est;
    est.n_samples = total;

    if (fixed_phi) {
        const double phi = *fixed_phi;
        constexpr std::size_t kScan = 128;
        std::size_t best = 0;
        double best_val = -kInf;
        for (std::size_t k = 0; k <= kScan; ++k) {
            const double v = loglik(kPi * static_cast<double>(k) / kScan, phi);
            if (v > best_val) {
                best_val = v;
                best = k;
            }
        }
        const double lo = kPi * static_cast<double>(best == 0 ? 0 : best - 1) / kScan;
        const double hi = kPi * static_cast<double>(std::min(best + 1, kScan)) / kScan;
        double theta = golden_section_max(
            [&](double t) { return loglik(t, phi); }, lo, hi, 1e-12);
        // Function values flatten near the optimum, so finish on the score.
        const auto score = [&](double t) {
            double g = 0.0;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                const StateAngles st{t, phi};
                const double d = prob_derivatives(st, counts[i].direction, p, q).d_theta;
                const OutcomeProbabilities pr =
                    outcome_probabilities(state_from_angles(t, phi), pairs[i]);
                if (counts[i].n_m > 0) {
                    g += static_cast<double>(counts[i].n_m) * d / pr.m;
                }
                if (counts[i].n_mbar > 0) {
                    g -= static_cast<double>(counts[i].n_mbar) * d / pr.mbar;
                }
            }
            return g;
        };
        double a = std::max(lo, theta - 1e-6);
        double b = std::min(hi, theta + 1e-6);
        const double sa = score(a);
        const double sb = score(b);
        if (std::isfinite(sa) && std::isfinite(sb) && sa > 0.0 && sb < 0.0) {
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                const double mid = 0.5 * (a + b);
                const double sm = score(mid);
                if (sm > 0.0) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            theta = 0.5 * (a + b);
        }
        double val = loglik(theta, phi);
        for (const double edge : {0.0, kPi}) {
            const double v = loglik(edge, phi);
            if (v >= val) {
                theta = edge;
                val = v;
            }
        }
        est.theta_hat = theta;
        est.phi_hat = phi;
    } else {
        const auto neg = [&](const Point2 &x) {
            const double v = loglik(x[0], x[1]);
            return std::isfinite(v) ? -v : std::numeric_limits<double>::max();
        };
        const StateAngles init = moment_inversion(counts, p, q);
        std::vector<Point2> starts{{init.theta, init.phi},
                                   {kPi / 4.0, 0.0},
                                   {kPi / 4.0, kPi},
                                   {3.0 * kPi / 4.0, 0.0},
                                   {3.0 * kPi / 4.0, kPi}};
        Point2 best_x = starts.front();
        double best_f = std::numeric_limits<double>::max();
        for (const auto &s : starts) {
            const auto [x, fx] = nelder_mead(neg, s, 0.2);
            if (fx < best_f) {
                best_f = fx;
                best_x = x;
            }
        }
        const PureState canon = state_from_angles(best_x[0], best_x[1]);
        est.theta_hat = canon.theta();
        est.phi_hat = canon.phi();
        // The poles are approached but rarely hit by the simplex.
        for (const double edge : {0.0, kPi}) {
            if (loglik(edge, 0.0) >= loglik(est.theta_hat, est.phi_hat)) {
                est.theta_hat = edge;
                est.phi_hat = 0.0;
            }
        }
    }
    est.boundary_estimate = est.theta_hat <= 1e-9 || est.theta_hat >= kPi - 1e-9;

    FisherMatrix info;
    bool singular = false;
    for (const auto &c : counts) {
        try {
            info += static_cast<double>(c.n_m + c.n_mbar) *
                    fisher_matrix({est.theta_hat, est.phi_hat}, c.direction, p, q);
        } catch (const DegenerateDistribution &) {
            singular = true;
        }
    }
    if (fixed_phi) {
        est.crb_variance_theta =
            singular || info.f_tt < Tolerance::zero ? kInf : 1.0 / info.f_tt;
        est.crb_variance_phi = 0.0;
    } else {
        const double det = info.determinant();
        const double scale = std::max(1.0, info.f_tt * info.f_pp);
        if (singular || det <= Tolerance::zero * scale) {
            est.crb_variance_theta = kInf;
            est.crb_variance_phi = kInf;
        } else {
            est.crb_variance_theta = info.f_pp / det;
            est.crb_variance_phi = info.f_tt / det;
        }
    }
    return est;
}

} // namespace gpm
