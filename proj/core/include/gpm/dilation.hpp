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

#include <string>
#include <vector>

#include "gpm/algebra.hpp"
#include "gpm/measurement.hpp"

namespace gpm {

/// System (x) ancilla unitary realizing the POVM by a sharp ancilla
/// measurement. The ancilla starts in |m>.
struct DilationUnitary {
    Operator4 u;
    double p = 0.0;
    double q = 0.0;
};

/// U_x = sqrt(1-x) I + i sqrt(x) Y
Operator2 ancilla_rotation(double x);

/// U = (I+Z)/2 (x) U_q + (I-Z)/2 (x) U_p
DilationUnitary build_naimark_unitary(double p, double q);

/// K_x = (I (x) <x|) U (I (x) |m>)
Operator2 extract_kraus(const DilationUnitary &d, Outcome outcome);

/// Ancilla outcome probabilities after U acts on |psi> (x) |m>.
OutcomeProbabilities dilation_outcome_probabilities(const DilationUnitary &d,
                                                    const PureState &state);

struct Gate {
    std::string name;
    Operator4 matrix;
};

/// [X(x)I, C(U_q), X(x)I, C(U_p)] in application order, where C(V) applies
/// V to the ancilla when the system is |1>.
std::vector<Gate> gate_decomposition(double p, double q);

/// G_last * ... * G_first
Operator4 gate_product(const std::vector<Gate> &gates);

/// Double-well parameters with hbar = 1.
struct DoubleWellParams {
    double nu = 0.0;  ///< qubit angular frequency
    double t0 = 0.0;  ///< tunnel splitting for |0>
    double t1 = 0.0;  ///< tunnel splitting for |1>
    double tau = 0.0; ///< barrier-down time
};

/// H = -(nu/2) Z(x)I + (t0/2)(I+Z)/2 (x) X + (t1/2)(I-Z)/2 (x) X
///
/// t0 and t1 enter as tunnel splittings (half of each enters the coupling),
/// which makes the rotating-frame propagator carry cos(t tau / 2).
Operator4 doublewell_hamiltonian(const DoubleWellParams &params);

/// exp(-i nu tau Z(x)I / 2) exp(-i H tau) in closed form, which equals
///   (I+Z)/2 (x) [cos(t0 tau/2) I - i sin(t0 tau/2) X]
/// + (I-Z)/2 (x) [cos(t1 tau/2) I - i sin(t1 tau/2) X].
/// The reported (p, q) are sin^2(t1 tau/2) and sin^2(t0 tau/2).
/// Throws std::invalid_argument for tau < 0.
DilationUnitary doublewell_propagator(const DoubleWellParams &params);

/// W^dagger U W with W = I (x) diag(1, i): relabels the right-well state
/// as i|mbar>. This maps the double-well propagator onto
/// build_naimark_unitary exactly, and changes no measurement statistics.
Operator4 to_naimark_ancilla_basis(const Operator4 &u);

struct TunnelElements {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// t0 = (2/tau) arcsin(sqrt(q)), t1 = (2/tau) arcsin(sqrt(p)).
/// Throws std::invalid_argument for tau <= 0.
TunnelElements pulse_params(double p_target, double q_target, double tau);

} // namespace gpm
