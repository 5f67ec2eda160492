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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

#include "gpm/algebra.hpp"
#include "gpm/dilation.hpp"
#include "gpm/errors.hpp"
#include "gpm/fisher.hpp"
#include "gpm/measurement.hpp"
#include "gpm/parallel.hpp"
#include "gpm/reversal.hpp"
#include "gpm/rng.hpp"

namespace gpm::cli {

namespace {

constexpr double kDilationTolerance = 1e-10;
// Fixed double-well settings used by dilation-check.
constexpr double kCheckNu = 50.0;
constexpr double kCheckTau = 1.0;

void write_metadata(std::ostream &out, const char *command, const RunConfig &cfg) {
    out << "# gpm " << kVersion << " command=" << command << " seed=" << cfg.seed
        << " trials=" << cfg.trials << " runs=" << cfg.runs
        << " p=" << format_number(cfg.p) << " q=" << format_number(cfg.q)
        << " theta=" << format_number(cfg.theta) << " phi=" << format_number(cfg.phi)
        << " chi=" << format_number(cfg.chi) << " psi=" << format_number(cfg.psi)
        << " grid_n=" << cfg.grid_n << '\n';
}

std::uint64_t count_mbar(const PureState &state, const MeasurementPair &meas,
                         std::uint64_t trials, const RandomStream &master,
                         unsigned threads) {
    const auto blocks = run_blocks<std::uint64_t>(
        trials, threads, [&](std::uint64_t block, std::uint64_t, std::uint64_t n) {
            RandomStream rng = master.substream(block);
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < n; ++t) {
                hits += sample_outcome(state, meas, rng) == Outcome::mbar ? 1 : 0;
            }
            return hits;
        });
    std::uint64_t total = 0;
    for (const auto b : blocks) {
        total += b;
    }
    return total;
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string validate(const RunConfig &cfg) {
    if (cfg.trials < 1) {
        return "--trials must be >= 1";
    }
    if (cfg.runs < 1) {
        return "--runs must be >= 1";
    }
    if (cfg.grid_n < 2) {
        return "--grid-n must be >= 2";
    }
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) {
        return "--p must lie in [0, 1]";
    }
    if (!(cfg.q >= 0.0 && cfg.q <= 1.0)) {
        return "--q must lie in [0, 1]";
    }
    for (const double a : {cfg.theta, cfg.phi, cfg.chi, cfg.psi}) {
        if (!std::isfinite(a)) {
            return "angles must be finite";
        }
    }
    return {};
}

int cmd_measure(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (auto msg = validate(cfg); !msg.empty()) {
        err << "error: " << msg << '\n';
        return kUsage;
    }
    const PureState state = state_from_angles(cfg.theta, cfg.phi);
    const MeasurementPair meas =
        build_measurement_along(cfg.p, cfg.q, Direction{cfg.chi, cfg.psi});
    const OutcomeProbabilities exact = outcome_probabilities(state, meas);
    const std::uint64_t mbar =
        count_mbar(state, meas, cfg.trials, RandomStream(cfg.seed), cfg.threads);
    const double n = static_cast<double>(cfg.trials);

    write_metadata(out, "measure", cfg);
    out << "outcome,exact_prob,empirical_freq,trials,seed\n";
    out << "m," << format_number(exact.m) << ','
        << format_number(static_cast<double>(cfg.trials - mbar) / n) << ','
        << cfg.trials << ',' << cfg.seed << '\n';
    out << "mbar," << format_number(exact.mbar) << ','
        << format_number(static_cast<double>(mbar) / n) << ',' << cfg.trials << ','
        << cfg.seed << '\n';
    return kOk;
}

int cmd_reverse_mc(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (auto msg = validate(cfg); !msg.empty()) {
        err << "error: " << msg << '\n';
        return kUsage;
    }
    ReversalTally tally;
    try {
        tally = run_reversal_trials(state_from_angles(cfg.theta, cfg.phi), cfg.p,
                                    cfg.q, cfg.trials, cfg.seed, cfg.threads);
    } catch (const NonInvertibleMeasurement &e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    write_metadata(out, "reverse-mc", cfg);
    out << "p,q,trials,successes,empirical_rate,exact_rate,seed\n";
    out << format_number(cfg.p) << ',' << format_number(cfg.q) << ',' << tally.trials
        << ',' << tally.successes << ',' << format_number(tally.success_rate()) << ','
        << format_number(reversal_success_probability(cfg.p, cfg.q)) << ','
        << cfg.seed << '\n';
    return kOk;
}

int cmd_fisher_surface(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (auto msg = validate(cfg); !msg.empty()) {
        err << "error: " << msg << '\n';
        return kUsage;
    }
    const auto surface = fisher_surface(cfg.theta, cfg.chi, cfg.psi, cfg.phi,
                                        static_cast<std::size_t>(cfg.grid_n));
    write_metadata(out, "fisher-surface", cfg);
    out << "p,q,f_tt,f_tp,f_pp\n";
    for (const auto &pt : surface) {
        out << format_number(pt.p) << ',' << format_number(pt.q) << ','
            << format_number(pt.f.f_tt) << ',' << format_number(pt.f.f_tp) << ','
            << format_number(pt.f.f_pp) << '\n';
    }
    return kOk;
}

int cmd_tomography(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (auto msg = validate(cfg); !msg.empty()) {
        err << "error: " << msg << '\n';
        return kUsage;
    }
    if (std::abs(cfg.p - cfg.q) <= Tolerance::exact) {
        err << "error: p == q, the measurement carries no information about theta\n";
        return kDomain;
    }
    const Direction axis{cfg.chi, cfg.psi};
    const PureState state = state_from_angles(cfg.theta, cfg.phi);
    const MeasurementPair meas = build_measurement_along(cfg.p, cfg.q, axis);
    const RandomStream master(cfg.seed);

    double crb = 0.0;
    try {
        crb = cramer_rao(static_cast<double>(cfg.trials) *
                         fisher_matrix({cfg.theta, cfg.phi}, axis, cfg.p, cfg.q))
                  .var_theta;
    } catch (const DegenerateDistribution &e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }

    std::vector<double> estimates(cfg.runs);
    parallel_for_index(static_cast<std::size_t>(cfg.runs), cfg.threads, [&](std::size_t r) {
        const RandomStream run_stream = master.substream(r);
        const std::uint64_t mbar =
            count_mbar(state, meas, cfg.trials, run_stream, 1);
        const DirectionCounts counts{axis, cfg.trials - mbar, mbar};
        estimates[r] = mle_estimate({&counts, 1}, cfg.p, cfg.q, cfg.phi).theta_hat;
    });

    write_metadata(out, "tomography", cfg);
    out << "run_id,theta_true,theta_hat,crb_var,empirical_sq_err\n";
    double sum = 0.0;
    double sum_sq_err = 0.0;
    for (std::size_t r = 0; r < estimates.size(); ++r) {
        const double sq = (estimates[r] - cfg.theta) * (estimates[r] - cfg.theta);
        sum += estimates[r];
        sum_sq_err += sq;
        out << r << ',' << format_number(cfg.theta) << ',' << format_number(estimates[r])
            << ',' << format_number(crb) << ',' << format_number(sq) << '\n';
    }
    const double n_runs = static_cast<double>(estimates.size());
    out << "summary," << format_number(cfg.theta) << ',' << format_number(sum / n_runs)
        << ',' << format_number(crb) << ',' << format_number(sum_sq_err / n_runs)
        << '\n';
    return kOk;
}

int cmd_dilation_check(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    if (auto msg = validate(cfg); !msg.empty()) {
        err << "error: " << msg << '\n';
        return kUsage;
    }
    DilationUnitary naimark = build_naimark_unitary(cfg.p, cfg.q);
    if (cfg.inject_fault) {
        naimark.u(0, 0) = -naimark.u(0, 0);
    }
    const MeasurementPair meas = build_measurement(cfg.p, cfg.q);

    const double unitarity =
        max_abs_diff(naimark.u.adjoint() * naimark.u, Operator4::identity());
    double kraus = 0.0;
    for (const Outcome o : {Outcome::m, Outcome::mbar}) {
        kraus = std::max(kraus, phase_distance(extract_kraus(naimark, o), meas.kraus(o)));
    }
    const double gates =
        phase_distance(gate_product(gate_decomposition(cfg.p, cfg.q)), naimark.u);

    const TunnelElements t = pulse_params(cfg.p, cfg.q, kCheckTau);
    const DilationUnitary well =
        doublewell_propagator({kCheckNu, t.t0, t.t1, kCheckTau});
    double roundtrip = phase_distance(to_naimark_ancilla_basis(well.u), naimark.u);
    for (const Outcome o : {Outcome::m, Outcome::mbar}) {
        roundtrip =
            std::max(roundtrip, phase_distance(extract_kraus(well, o), meas.kraus(o)));
    }

    struct Line {
        const char *name;
        double value;
    };
    const Line lines[] = {{"unitarity", unitarity},
                          {"kraus_vs_povm", kraus},
                          {"gate_product_vs_unitary", gates},
                          {"doublewell_roundtrip", roundtrip}};

    write_metadata(out, "dilation-check", cfg);
    out << "# doublewell nu=" << format_number(kCheckNu)
        << " tau=" << format_number(kCheckTau) << " t0=" << format_number(t.t0)
        << " t1=" << format_number(t.t1) << '\n';
    bool ok = true;
    for (const auto &l : lines) {
        const bool pass = l.value < kDilationTolerance;
        ok = ok && pass;
        out << l.name << " max_dev=" << format_number(l.value) << ' '
            << (pass ? "PASS" : "FAIL") << '\n';
    }
    out << "result " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kVerification;
}

int run_command(const std::string &name, const RunConfig &cfg, std::ostream &out,
                std::ostream &err) {
    if (name == "measure") {
        return cmd_measure(cfg, out, err);
    }
    if (name == "reverse-mc") {
        return cmd_reverse_mc(cfg, out, err);
    }
    if (name == "fisher-surface") {
        return cmd_fisher_surface(cfg, out, err);
    }
    if (name == "tomography") {
        return cmd_tomography(cfg, out, err);
    }
    if (name == "dilation-check") {
        return cmd_dilation_check(cfg, out, err);
    }
    err << "error: unknown command '" << name << "'\n";
    return kUsage;
}

} // namespace gpm::cli
