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
#include <iosfwd>
#include <string>

namespace gpm::cli {

inline constexpr const char *kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kDomain = 3,
    kVerification = 4,
};

struct RunConfig {
    std::uint64_t seed = 42;
    std::uint64_t trials = 100000;
    double p = 0.3;
    double q = 0.2;
    double theta = 0.0;
    double phi = 0.0;
    double chi = 0.0;
    double psi = 0.0;
    std::uint64_t grid_n = 101;
    std::uint64_t runs = 200;
    std::string output_path;
    /// Worker threads for Monte Carlo; never affects output.
    unsigned threads = 1;
    /// dilation-check only: corrupt the Naimark unitary before checking.
    bool inject_fault = false;
};

/// Empty when valid, otherwise a usage message.
std::string validate(const RunConfig &cfg);

// Each command writes its artifact to `out` and diagnostics to `err`, and
// returns an ExitCode.
int cmd_measure(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_reverse_mc(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_fisher_surface(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_tomography(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_dilation_check(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Dispatches by subcommand name; unknown names are usage errors.
int run_command(const std::string &name, const RunConfig &cfg,
                std::ostream &out, std::ostream &err);

/// Fixed 12-significant-digit formatting; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

} // namespace gpm::cli
