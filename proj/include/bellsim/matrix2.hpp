// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

namespace bellsim {

using Complex = std::complex<double>;

/// Default absolute tolerance shared by the engines. Every routine that
/// compares floating point values takes an EngineConfig so the knob lives in
/// one place.
inline constexpr double kDefaultTolerance = 1e-10;

struct EngineConfig {
    double tolerance = kDefaultTolerance;
};

/// Dense 2x2 complex matrix, row-major.
struct Matrix2 {
    std::array<Complex, 4> m{};

    constexpr Complex &operator()(int r, int c) { return m[2 * r + c]; }
    constexpr const Complex &operator()(int r, int c) const { return m[2 * r + c]; }

    static constexpr Matrix2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

    [[nodiscard]] Matrix2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    [[nodiscard]] Complex trace() const { return m[0] + m[3]; }
    [[nodiscard]] Complex determinant() const { return m[0] * m[3] - m[1] * m[2]; }

    friend Matrix2 operator*(const Matrix2 &a, const Matrix2 &b) {
        Matrix2 out;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
            }
        }
        return out;
    }
    friend Matrix2 operator*(Complex s, Matrix2 a) {
        for (auto &x : a.m) {
            x *= s;
        }
        return a;
    }
    friend Matrix2 operator+(Matrix2 a, const Matrix2 &b) {
        for (int k = 0; k < 4; ++k) {
            a.m[k] += b.m[k];
        }
        return a;
    }
    friend Matrix2 operator-(Matrix2 a, const Matrix2 &b) {
        for (int k = 0; k < 4; ++k) {
            a.m[k] -= b.m[k];
        }
        return a;
    }
};

namespace pauli {
inline const Matrix2 I = Matrix2::identity();
inline const Matrix2 X = {{0.0, 1.0, 1.0, 0.0}};
inline const Matrix2 Y = {{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0}};
inline const Matrix2 Z = {{1.0, 0.0, 0.0, -1.0}};
} // namespace pauli

/// Largest entrywise deviation of `a` from `b`.
inline double max_abs_diff(const Matrix2 &a, const Matrix2 &b) {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(a.m[k] - b.m[k]));
    }
    return worst;
}

inline bool is_hermitian(const Matrix2 &a, double tol) {
    return max_abs_diff(a, a.adjoint()) <= tol;
}

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::pair<double, double> hermitian_eigenvalues(const Matrix2 &a) {
    const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double half_gap = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double radius = std::hypot(half_gap, std::abs(a(0, 1)));
    return {mean - radius, mean + radius};
}

} // namespace bellsim
