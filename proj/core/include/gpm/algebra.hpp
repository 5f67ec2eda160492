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

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace gpm {

using cplx = std::complex<double>;

/// Tolerances shared by every module.
struct Tolerance {
    /// Algebraic identities (unitarity, completeness, eigen-equations).
    static constexpr double exact = 1e-12;
    /// Composed numerics (state recovery, fidelity-based equality).
    static constexpr double numeric = 1e-10;
    /// Below this a probability or determinant is treated as zero.
    static constexpr double zero = 1e-14;
};

/// Dense N x N complex matrix stored row-major.
template <std::size_t N> class SquareMatrix {
  public:
    static constexpr std::size_t dim = N;

    constexpr SquareMatrix() : data_{} {}

    /// Row-major initialization; missing entries are zero.
    SquareMatrix(std::initializer_list<cplx> entries) : data_{} {
        std::size_t k = 0;
        for (const auto &e : entries) {
            if (k == N * N) {
                break;
            }
            data_[k++] = e;
        }
    }

    static SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static SquareMatrix zero() { return SquareMatrix{}; }

    cplx &operator()(std::size_t row, std::size_t col) {
        return data_[row * N + col];
    }
    const cplx &operator()(std::size_t row, std::size_t col) const {
        return data_[row * N + col];
    }

    SquareMatrix adjoint() const {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                out(i, j) = std::conj((*this)(j, i));
            }
        }
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    SquareMatrix &operator+=(const SquareMatrix &rhs) {
        for (std::size_t k = 0; k < N * N; ++k) {
            data_[k] += rhs.data_[k];
        }
        return *this;
    }
    SquareMatrix &operator-=(const SquareMatrix &rhs) {
        for (std::size_t k = 0; k < N * N; ++k) {
            data_[k] -= rhs.data_[k];
        }
        return *this;
    }
    SquareMatrix &operator*=(cplx s) {
        for (auto &e : data_) {
            e *= s;
        }
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix &b) {
        return a += b;
    }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix &b) {
        return a -= b;
    }
    friend SquareMatrix operator*(SquareMatrix a, cplx s) { return a *= s; }
    friend SquareMatrix operator*(cplx s, SquareMatrix a) { return a *= s; }

    friend SquareMatrix operator*(const SquareMatrix &a,
                                  const SquareMatrix &b) {
        SquareMatrix out;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                for (std::size_t j = 0; j < N; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend std::array<cplx, N> operator*(const SquareMatrix &a,
                                         const std::array<cplx, N> &v) {
        std::array<cplx, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                out[i] += a(i, j) * v[j];
            }
        }
        return out;
    }

    const std::array<cplx, N * N> &entries() const { return data_; }

  private:
    std::array<cplx, N * N> data_;
};

/// Single-qubit operator.
using Operator2 = SquareMatrix<2>;

/// System (x) ancilla operator. Basis order: |0,m>, |0,mbar>, |1,m>, |1,mbar>.
using Operator4 = SquareMatrix<4>;

/// max_ij |a_ij - b_ij|
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N> &a, const SquareMatrix<N> &b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

/// min over gamma of max_ij |a_ij - e^{i gamma} b_ij|, evaluated at the
/// phase that aligns the Frobenius inner product <b, a>.
template <std::size_t N>
double phase_distance(const SquareMatrix<N> &a, const SquareMatrix<N> &b) {
    cplx overlap = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) {
        overlap += std::conj(b.entries()[k]) * a.entries()[k];
    }
    const double mag = std::abs(overlap);
    const cplx phase = mag > 0.0 ? overlap / mag : cplx{1.0, 0.0};
    return max_abs_diff(a, b * phase);
}

/// True when ||A^dagger A - I||_max < Tolerance::exact.
template <std::size_t N> bool is_unitary(const SquareMatrix<N> &a) {
    return max_abs_diff(a.adjoint() * a, SquareMatrix<N>::identity()) <
           Tolerance::exact;
}

// Pauli matrices and single-qubit rotations.
Operator2 pauli_x();
Operator2 pauli_y();
Operator2 pauli_z();

/// exp(-i angle Z / 2)
Operator2 rotation_z(double angle);
/// exp(-i angle Y / 2)
Operator2 rotation_y(double angle);

cplx determinant(const Operator2 &a);

/// Throws SingularOperator when |det| <= Tolerance::zero.
Operator2 inverse(const Operator2 &a);

/// Kronecker product, system factor first.
Operator4 kron(const Operator2 &system, const Operator2 &ancilla);

/// Qubit pure state a0|0> + a1|1>.
class PureState {
  public:
    /// Normalizes the given amplitudes. Throws ZeroProbabilityOutcome on a
    /// zero vector.
    PureState(cplx amp0, cplx amp1);

    static PureState zero() { return {1.0, 0.0}; }
    static PureState one() { return {0.0, 1.0}; }

    cplx amp0() const { return amps_[0]; }
    cplx amp1() const { return amps_[1]; }
    const std::array<cplx, 2> &amplitudes() const { return amps_; }

    /// Polar angle in [0, pi].
    double theta() const;
    /// Relative phase arg(a1/a0) in [0, 2 pi); 0 at the poles.
    double phi() const;

    PureState apply(const Operator2 &op) const;

  private:
    std::array<cplx, 2> amps_;
};

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
PureState state_from_angles(double theta, double phi);

/// |<a|b>|^2
double fidelity(const PureState &a, const PureState &b);

/// <a|b>
cplx inner(const PureState &a, const PureState &b);

/// Measurement axis on the Bloch sphere.
struct Direction {
    double chi = 0.0; ///< polar angle, [0, pi]
    double psi = 0.0; ///< azimuth, [0, 2 pi)

    static Direction z() { return {0.0, 0.0}; }
    static Direction x();
    static Direction y();

    std::array<double, 3> unit_vector() const;
};

/// n . sigma
Operator2 spin_operator(const Direction &n);

/// R = R_z(psi) R_y(chi). R|0> = |+>_n and R|1> = |->_n; R = I for n = z.
Operator2 rotation_for_direction(const Direction &n);

} // namespace gpm
