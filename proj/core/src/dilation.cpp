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

#include "gpm/dilation.hpp"

#include <cmath>
#include <stdexcept>

namespace gpm {

using namespace std::complex_literals;

namespace {

Operator2 projector0() { return {1.0, 0.0, 0.0, 0.0}; }
Operator2 projector1() { return {0.0, 0.0, 0.0, 1.0}; }

// e^{-i a tau} [cos(b tau) I - i sin(b tau) X] = exp(-i (a I + b X) tau)
Operator2 block_exponential(double a, double b, double tau) {
    const cplx phase = std::polar(1.0, -a * tau);
    const double c = std::cos(b * tau);
    const double s = std::sin(b * tau);
    return Operator2{c, -1i * s, -1i * s, c} * phase;
}

} // namespace

Operator2 ancilla_rotation(double x) {
    return Operator2::identity() * std::sqrt(1.0 - x) +
           pauli_y() * (1i * std::sqrt(x));
}

DilationUnitary build_naimark_unitary(double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    return {kron(projector0(), ancilla_rotation(q)) +
                kron(projector1(), ancilla_rotation(p)),
            p, q};
}

Operator2 extract_kraus(const DilationUnitary &d, Outcome outcome) {
    // Column 2j of U is the image of |j, m>; row 2i + a picks <i, a|.
    const std::size_t a = outcome == Outcome::m ? 0 : 1;
    Operator2 k;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            k(i, j) = d.u(2 * i + a, 2 * j);
        }
    }
    return k;
}

OutcomeProbabilities dilation_outcome_probabilities(const DilationUnitary &d,
                                                    const PureState &state) {
    const std::array<cplx, 4> in{state.amp0(), 0.0, state.amp1(), 0.0};
    const auto out = d.u * in;
    return {std::norm(out[0]) + std::norm(out[2]),
            std::norm(out[1]) + std::norm(out[3])};
}

std::vector<Gate> gate_decomposition(double p, double q) {
    require_probability(p, "p");
    require_probability(q, "q");
    const Operator2 id = Operator2::identity();
    const Operator4 x_system = kron(pauli_x(), id);
    const auto controlled = [&](const Operator2 &v) {
        return kron(projector0(), id) + kron(projector1(), v);
    };
    return {{"X(x)I", x_system},
            {"C(U_q)", controlled(ancilla_rotation(q))},
            {"X(x)I", x_system},
            {"C(U_p)", controlled(ancilla_rotation(p))}};
}

Operator4 gate_product(const std::vector<Gate> &gates) {
    Operator4 out = Operator4::identity();
    for (const auto &g : gates) {
        out = g.matrix * out;
    }
    return out;
}

Operator4 doublewell_hamiltonian(const DoubleWellParams &params) {
    const Operator2 id = Operator2::identity();
    return kron(pauli_z(), id) * (-params.nu / 2.0) +
           kron(projector0(), pauli_x()) * (params.t0 / 2.0) +
           kron(projector1(), pauli_x()) * (params.t1 / 2.0);
}

DilationUnitary doublewell_propagator(const DoubleWellParams &params) {
    if (params.tau < 0.0) {
        throw std::invalid_argument("doublewell_propagator needs tau >= 0");
    }
    const double tau = params.tau;
    // H is block diagonal in the system basis: -nu/2 + (t0/2) X on |0>,
    // +nu/2 + (t1/2) X on |1>.
    const Operator2 lab0 = block_exponential(-params.nu / 2.0, params.t0 / 2.0, tau);
    const Operator2 lab1 = block_exponential(params.nu / 2.0, params.t1 / 2.0, tau);
    // Rotating frame exp(-i nu tau Z(x)I / 2).
    const cplx frame0 = std::polar(1.0, -params.nu * tau / 2.0);
    const cplx frame1 = std::conj(frame0);

    const double s0 = std::sin(params.t0 * tau / 2.0);
    const double s1 = std::sin(params.t1 * tau / 2.0);
    return {kron(projector0(), lab0 * frame0) + kron(projector1(), lab1 * frame1),
            s1 * s1, s0 * s0};
}

Operator4 to_naimark_ancilla_basis(const Operator4 &u) {
    const Operator4 w = kron(Operator2::identity(), Operator2{1.0, 0.0, 0.0, 1i});
    return w.adjoint() * u * w;
}

TunnelElements pulse_params(double p_target, double q_target, double tau) {
    require_probability(p_target, "p");
    require_probability(q_target, "q");
    if (!(tau > 0.0)) {
        throw std::invalid_argument("pulse_params needs tau > 0");
    }
    return {(2.0 / tau) * std::asin(std::sqrt(q_target)),
            (2.0 / tau) * std::asin(std::sqrt(p_target))};
}

} // namespace gpm
