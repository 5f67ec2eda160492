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

#include "gpm/reversal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpm/errors.hpp"
#include "gpm/parallel.hpp"

namespace gpm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near_endpoint(double v) {
    return std::abs(v) <= Tolerance::exact ||
           std::abs(1.0 - v) <= Tolerance::exact;
}

std::size_t index_of(Outcome o) { return o == Outcome::m ? 0 : 1; }

// One measurement step: samples with a single uniform (mbar iff u < P_mbar,
// as sample_outcome does) and returns the unnormalized branch vector.
std::array<cplx, 2> measure_step(const std::array<cplx, 2> &in,
                                 const MeasurementPair &meas, RandomStream &rng,
                                 Outcome &outcome, double &prob) {
    const auto vm = meas.kraus(Outcome::m) * in;
    const auto vb = meas.kraus(Outcome::mbar) * in;
    const double pm = std::norm(vm[0]) + std::norm(vm[1]);
    const double pb = std::norm(vb[0]) + std::norm(vb[1]);
    if (rng.uniform() < pb) {
        outcome = Outcome::mbar;
        prob = pb;
        return vb;
    }
    outcome = Outcome::m;
    prob = pm;
    return vm;
}

ReversalRecord run_once(const PureState &state, const MeasurementPair &meas,
                        RandomStream &rng) {
    ReversalRecord rec;
    double p_first = 0.0;
    double p_second = 0.0;

    auto v = measure_step(state.amplitudes(), meas, rng, rec.first_outcome, p_first);
    // Normalize, then apply X.
    const double n1 = std::sqrt(p_first);
    const std::array<cplx, 2> flipped{v[1] / n1, v[0] / n1};

    v = measure_step(flipped, meas, rng, rec.second_outcome, p_second);
    rec.path_probability = p_first * p_second;
    rec.success = rec.first_outcome == rec.second_outcome;
    rec.final_state = rec.success ? PureState(v[1], v[0]) : PureState(v[0], v[1]);
    return rec;
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    // fmod can return exactly 2 pi after the shift for tiny negatives
    return a >= kTwoPi ? 0.0 : a;
}

} // namespace

void require_invertible(double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    if (near_endpoint(p) || near_endpoint(q)) {
        throw NonInvertibleMeasurement(
            "measurement operators are not invertible for p or q in {0, 1} "
            "(p = " +
            std::to_string(p) + ", q = " + std::to_string(q) + ")");
    }
}

Operator2 inverse_operator(const MeasurementPair &meas, Outcome outcome) {
    const double p = meas.p();
    const double q = meas.q();
    require_invertible(p, q);
    const Operator2 x = pauli_x();
    Operator2 z_inverse;
    if (outcome == Outcome::m) {
        const Operator2 m{std::sqrt(1.0 - q), 0.0, 0.0, std::sqrt(1.0 - p)};
        z_inverse = x * m * x * (1.0 / std::sqrt((1.0 - p) * (1.0 - q)));
    } else {
        const Operator2 mbar{std::sqrt(q), 0.0, 0.0, std::sqrt(p)};
        z_inverse = x * mbar * x * (1.0 / std::sqrt(p * q));
    }
    const Operator2 r = rotation_for_direction(meas.direction());
    return r * z_inverse * r.adjoint();
}

ReversalRecord run_reversal(const PureState &state, double p, double q,
                            RandomStream &rng) {
    require_invertible(p, q);
    return run_once(state, build_measurement(p, q), rng);
}

double reversal_success_probability(double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    return (1.0 - p) * (1.0 - q) + p * q;
}

PureState fail_path_state(const PureState &state, double p, double q,
                          FailPath path) {
    const MeasurementPair meas = build_measurement(p, q);
    const Outcome first =
        path == FailPath::m_then_mbar ? Outcome::m : Outcome::mbar;
    const Outcome second =
        path == FailPath::m_then_mbar ? Outcome::mbar : Outcome::m;
    const Operator2 chain = meas.kraus(second) * pauli_x() * meas.kraus(first);
    const auto v = chain * state.amplitudes();
    if (std::norm(v[0]) + std::norm(v[1]) <= Tolerance::zero) {
        throw ZeroProbabilityOutcome("fail path has zero probability");
    }
    return {v[0], v[1]};
}

ReversalTally &ReversalTally::operator+=(const ReversalTally &rhs) {
    trials += rhs.trials;
    successes += rhs.successes;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            paths[i][j] += rhs.paths[i][j];
        }
    }
    worst_success_infidelity =
        std::max(worst_success_infidelity, rhs.worst_success_infidelity);
    worst_fail_mismatch = std::max(worst_fail_mismatch, rhs.worst_fail_mismatch);
    return *this;
}

ReversalTally run_reversal_trials(const PureState &state, double p, double q,
                                  std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads) {
    require_invertible(p, q);
    const MeasurementPair meas = build_measurement(p, q);
    const PureState fail_m = fail_path_state(state, p, q, FailPath::m_then_mbar);
    const PureState fail_mbar =
        fail_path_state(state, p, q, FailPath::mbar_then_m);
    const RandomStream master(seed);

    auto blocks = run_blocks<ReversalTally>(
        trials, threads,
        [&](std::uint64_t block, std::uint64_t, std::uint64_t count) {
            RandomStream rng = master.substream(block);
            ReversalTally tally;
            tally.trials = count;
            for (std::uint64_t t = 0; t < count; ++t) {
                const ReversalRecord rec = run_once(state, meas, rng);
                ++tally.paths[index_of(rec.first_outcome)]
                             [index_of(rec.second_outcome)];
                if (rec.success) {
                    ++tally.successes;
                    tally.worst_success_infidelity =
                        std::max(tally.worst_success_infidelity,
                                 1.0 - fidelity(rec.final_state, state));
                } else {
                    const PureState &expected =
                        rec.first_outcome == Outcome::m ? fail_m : fail_mbar;
                    tally.worst_fail_mismatch =
                        std::max(tally.worst_fail_mismatch,
                                 1.0 - fidelity(rec.final_state, expected));
                }
            }
            return tally;
        });

    ReversalTally total;
    for (const auto &b : blocks) {
        total += b;
    }
    return total;
}

std::vector<PureState> probe_states(std::size_t n) {
    std::vector<PureState> out;
    out.reserve(n);
    out.push_back(state_from_angles(0.0, 0.0));
    out.push_back(state_from_angles(std::numbers::pi, 0.0));
    const std::size_t interior = n > 2 ? n - 2 : 0;
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < interior; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) /
                                   static_cast<double>(interior);
        const double theta = std::acos(z);
        const double phi = wrap_angle(golden_angle * static_cast<double>(i));
        out.push_back(state_from_angles(theta, phi));
    }
    return out;
}

double worst_case_recovery(const std::array<double, 3> &angles,
                           const std::vector<PureState> &inputs,
                           const std::vector<PureState> &x_completed_fail) {
    const Operator2 r = rotation_z(angles[0]) * rotation_y(angles[1]) *
                        rotation_z(angles[2]);
    double worst = 1.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto v = r * x_completed_fail[i].amplitudes();
        const cplx overlap = std::conj(inputs[i].amp0()) * v[0] +
                             std::conj(inputs[i].amp1()) * v[1];
        worst = std::min(worst, std::norm(overlap));
    }
    return worst;
}

ReversalSearchResult deterministic_reversal_search(double p, double q,
                                                   std::size_t n_states) {
    require_probability(p, "p");
    require_probability(q, "q");
    if (p <= 0.0 || p >= 1.0 || q <= 0.0 || q >= 1.0) {
        throw InvalidProbability("deterministic_reversal_search needs p, q in (0, 1)");
    }
    if (n_states < 16) {
        throw std::invalid_argument("deterministic_reversal_search needs n_states >= 16");
    }

    const std::vector<PureState> inputs = probe_states(n_states);
    std::vector<PureState> completed;
    completed.reserve(inputs.size());
    for (const auto &s : inputs) {
        completed.push_back(fail_path_state(s, p, q).apply(pauli_x()));
    }
    auto objective = [&](const std::array<double, 3> &a) {
        return worst_case_recovery(a, inputs, completed);
    };

    // Values closer than this count as ties and keep the earlier candidate.
    constexpr double kTie = 1e-13;
    constexpr std::size_t kGrid = 32;
    constexpr std::size_t kStarts = 4;
    const double grid_step = kTwoPi / static_cast<double>(kGrid);

    struct Candidate {
        std::array<double, 3> angles;
        double value;
    };
    std::vector<Candidate> grid;
    grid.reserve(kGrid * kGrid * kGrid);
    for (std::size_t i = 0; i < kGrid; ++i) {
        for (std::size_t j = 0; j < kGrid; ++j) {
            for (std::size_t k = 0; k < kGrid; ++k) {
                const std::array<double, 3> a{grid_step * static_cast<double>(i),
                                              grid_step * static_cast<double>(j),
                                              grid_step * static_cast<double>(k)};
                grid.push_back({a, objective(a)});
            }
        }
    }
    // The first start is the earliest grid point within kTie of the maximum;
    // the remaining starts are the next-best grid points.
    std::size_t lead = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i].value > grid[lead].value + kTie) {
            lead = i;
        }
    }
    std::swap(grid[0], grid[lead]);
    const std::size_t n_starts = std::min(kStarts, grid.size());
    std::partial_sort(grid.begin() + 1, grid.begin() + n_starts, grid.end(),
                      [](const Candidate &a, const Candidate &b) {
                          return a.value > b.value;
                      });

    Candidate best = grid.front();
    for (std::size_t s = 0; s < n_starts; ++s) {
        Candidate cur = grid[s];
        double step = grid_step / 2.0;
        while (step >= 1e-8) {
            bool improved = false;
            for (std::size_t c = 0; c < 3; ++c) {
                for (const double sign : {1.0, -1.0}) {
                    std::array<double, 3> trial = cur.angles;
                    trial[c] += sign * step;
                    const double v = objective(trial);
                    if (v > cur.value + kTie) {
                        cur = {trial, v};
                        improved = true;
                    }
                }
            }
            if (!improved) {
                step /= 2.0;
            }
        }
        if (cur.value > best.value + kTie) {
            best = cur;
        }
    }

    ReversalSearchResult out;
    for (std::size_t c = 0; c < 3; ++c) {
        out.angles[c] = wrap_angle(best.angles[c]);
    }
    out.worst_case_fidelity = best.value;
    return out;
}

} // namespace gpm
