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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "gpm/parallel.hpp"

namespace {

void add_run_options(CLI::App &sub, gpm::cli::RunConfig &cfg) {
    sub.add_option("--p", cfg.p, "switching probability from |1>")->capture_default_str();
    sub.add_option("--q", cfg.q, "switching probability from |0>")->capture_default_str();
    sub.add_option("--theta", cfg.theta, "state polar angle (rad)")->capture_default_str();
    sub.add_option("--phi", cfg.phi, "state azimuth (rad)")->capture_default_str();
    sub.add_option("--chi", cfg.chi, "measurement axis polar angle (rad)")->capture_default_str();
    sub.add_option("--psi", cfg.psi, "measurement axis azimuth (rad)")->capture_default_str();
    sub.add_option("--trials", cfg.trials, "Monte Carlo trials (samples per run for tomography)")
        ->capture_default_str();
    sub.add_option("--grid-n", cfg.grid_n, "grid points per axis")->capture_default_str();
    sub.add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
    sub.add_option("--out", cfg.output_path, "output file (default: stdout)");
    sub.add_option("--threads", cfg.threads, "worker threads; output does not depend on it")
        ->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Generalized partial measurements on a qubit: POVM simulation, "
                 "reversal, Fisher information and dilation checks"};
    app.set_version_flag("--version", gpm::cli::kVersion);
    app.require_subcommand(1);

    gpm::cli::RunConfig cfg;
    cfg.threads = gpm::default_thread_count();

    auto *measure = app.add_subcommand("measure", "exact and sampled outcome statistics");
    auto *reverse = app.add_subcommand("reverse-mc", "Monte Carlo of the two-path reversal protocol");
    auto *surface = app.add_subcommand("fisher-surface", "Fisher matrix over a (p, q) grid");
    auto *tomo = app.add_subcommand("tomography", "repeated maximum-likelihood estimation of theta");
    auto *dilation = app.add_subcommand("dilation-check", "verify the dilation constructions");
    for (auto *sub : {measure, reverse, surface, tomo, dilation}) {
        add_run_options(*sub, cfg);
    }
    tomo->add_option("--runs", cfg.runs, "independent estimation runs")->capture_default_str();
    dilation->add_flag("--inject-fault", cfg.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return gpm::cli::kUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    std::ostringstream buffer;
    const int code = gpm::cli::run_command(name, cfg, buffer, std::cerr);
    if (cfg.output_path.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(cfg.output_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << cfg.output_path << '\n';
            return gpm::cli::kUsage;
        }
        file << buffer.str();
    }
    return code;
}
