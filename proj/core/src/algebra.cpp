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

#include "gpm/algebra.hpp"

#include <cmath>
#include <numbers>

#include "gpm/errors.hpp"

namespace gpm {

using namespace std::complex_literals;

Operator2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }
Operator2 pauli_y() { return {0.0, -1i, 1i, 0.0}; }
Operator2 pauli_z() { return {1.0, 0.0, 0.0, -1.0}; }

Operator2 rotation_z(double angle) {
    const cplx half = std::polar(1.0, -angle / 2.0);
    return {half, 0.0, 0.0, std::conj(half)};
}

Operator2 rotation_y(double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return {c, -s, s, c};
}

cplx determinant(const Operator2 &a) {
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

Operator2 inverse(const Operator2 &a) {
    const cplx det = determinant(a);
    if (std::abs(det) <= Tolerance::zero) {
        throw SingularOperator("operator is singular (|det| <= 1e-14)");
    }
    return Operator2{a(1, 1), -a(0, 1), -a(1, 0), a(0, 0)} * (1.0 / det);
}

Operator4 kron(const Operator2 &system, const Operator2 &ancilla) {
    Operator4 out;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                for (std::size_t l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = system(i, j) * ancilla(k, l);
                }
            }
        }
    }
    return out;
}

PureState::PureState(cplx amp0, cplx amp1) {
    const double norm = std::sqrt(std::norm(amp0) + std::norm(amp1));
    if (norm <= 0.0 || !std::isfinite(norm)) {
        throw ZeroProbabilityOutcome("cannot normalize a zero state vector");
    }
    amps_ = {amp0 / norm, amp1 / norm};
}

double PureState::theta() const {
    return 2.0 * std::atan2(std::abs(amps_[1]), std::abs(amps_[0]));
}

double PureState::phi() const {
    if (std::abs(amps_[0]) == 0.0 || std::abs(amps_[1]) == 0.0) {
        return 0.0;
    }
    double phase = std::arg(amps_[1] * std::conj(amps_[0]));
    if (phase < 0.0) {
        phase += 2.0 * std::numbers::pi;
    }
    return phase;
}

PureState PureState::apply(const Operator2 &op) const {
    const auto out = op * amps_;
    return {out[0], out[1]};
}

PureState state_from_angles(double theta, double phi) {
    return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
}

cplx inner(const PureState &a, const PureState &b) {
    return std::conj(a.amp0()) * b.amp0() + std::conj(a.amp1()) * b.amp1();
}

double fidelity(const PureState &a, const PureState &b) {
    return std::min(1.0, std::norm(inner(a, b)));
}

Direction Direction::x() { return {std::numbers::pi / 2.0, 0.0}; }
Direction Direction::y() {
    return {std::numbers::pi / 2.0, std::numbers::pi / 2.0};
}

std::array<double, 3> Direction::unit_vector() const {
    return {std::sin(chi) * std::cos(psi), std::sin(chi) * std::sin(psi),
            std::cos(chi)};
}

Operator2 spin_operator(const Direction &n) {
    const auto v = n.unit_vector();
    return pauli_x() * v[0] + pauli_y() * v[1] + pauli_z() * v[2];
}

Operator2 rotation_for_direction(const Direction &n) {
    return rotation_z(n.psi) * rotation_y(n.chi);
}

} // namespace gpm
