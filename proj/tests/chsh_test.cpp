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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bellsim/chsh.hpp"
#include "test_support.hpp"

namespace {

using namespace bellsim;
using namespace bellsim::testing;

constexpr double kPiHalf = std::numbers::pi / 2;
constexpr double kPiQuarter = std::numbers::pi / 4;

// Observable built literally as P(+) - P(-) from the two basis vectors
// (u + e^{i t} w)/sqrt(2) and (u + e^{i (t + pi)} w)/sqrt(2).
Matrix2 projector_difference(const std::array<Complex, 2> &u, const std::array<Complex, 2> &w, double t) {
    auto projector = [&](double phase) {
        const Complex e = std::polar(1.0, phase);
        const std::array<Complex, 2> v = {(u[0] + e * w[0]) / std::sqrt(2.0),
                                          (u[1] + e * w[1]) / std::sqrt(2.0)};
        Matrix2 p;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                p(r, c) = v[r] * std::conj(v[c]);
            }
        }
        return p;
    };
    return projector(t) - projector(t + std::numbers::pi);
}

const std::array<Complex, 2> kKet0 = {1.0, 0.0};
const std::array<Complex, 2> kKet1 = {0.0, 1.0};

Matrix2 oracle_a(double alpha) { return projector_difference(kKet0, kKet1, alpha); }
Matrix2 oracle_b(double chi) { return projector_difference(kKet1, kKet0, chi); }

TEST(ObservableA, Examples) {
    EXPECT_LT(max_abs_diff(observable_a(0.0).matrix(), pauli::X), 1e-15);
    EXPECT_LT(max_abs_diff(oracle_a(kPiHalf), pauli::Y), 1e-15);
    EXPECT_LT(max_abs_diff(observable_a(kPiHalf).matrix(), pauli::Y), 1e-15);
    // Characteristic polynomial l^2 - tr l + det = 0 with tr = 0, det = -1.
    const Matrix2 a = observable_a(0.7).matrix();
    const Complex tr = a.trace();
    const Complex det = a.determinant();
    for (double l : {1.0, -1.0}) {
        EXPECT_LT(std::abs(l * l - tr * l + det), 1e-12);
    }
    const auto [lo, hi] = hermitian_eigenvalues(a);
    EXPECT_NEAR(lo, -1.0, 1e-12);
    EXPECT_NEAR(hi, 1.0, 1e-12);
}

TEST(ObservableB, Examples) {
    EXPECT_LT(max_abs_diff(observable_b(0.0).matrix(), pauli::X), 1e-15);
    const Matrix2 minus_y = Complex(-1.0) * pauli::Y;
    EXPECT_LT(max_abs_diff(oracle_b(kPiHalf), minus_y), 1e-15);
    EXPECT_LT(max_abs_diff(observable_b(kPiHalf).matrix(), minus_y), 1e-15);
}

TEST(Observables, MatchProjectorConstruction) {
    Rng rng(21);
    for (int k = 0; k < 200; ++k) {
        const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
        EXPECT_LT(max_abs_diff(observable_a(t).matrix(), oracle_a(t)), 1e-12);
        EXPECT_LT(max_abs_diff(observable_b(t).matrix(), oracle_b(t)), 1e-12);
        EXPECT_TRUE(is_hermitian(observable_a(t).matrix(), 1e-12));
        // Squares to the identity, so the spectrum is {+1, -1}.
        const Matrix2 sq = observable_b(t).matrix() * observable_b(t).matrix();
        EXPECT_LT(max_abs_diff(sq, Matrix2::identity()), 1e-12);
    }
}

TEST(Correlation, PsiPlusClosedForm) {
    EXPECT_NEAR(correlation(psi_plus(), kPiHalf, -kPiQuarter), std::cos(kPiQuarter), 1e-12);
    EXPECT_NEAR(correlation(psi_plus(), 0.0, 0.0), 1.0, 1e-12);
    const auto psi = psi_plus();
    const std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
    Rng rng(100);
    for (int k = 0; k < 1000; ++k) {
        const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double c = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double dense = dense_expectation(kron(to_dense(oracle_a(a)), to_dense(oracle_b(c))), v);
        EXPECT_NEAR(dense, std::cos(a + c), 1e-12);
        EXPECT_NEAR(correlation(psi, a, c), std::cos(a + c), 1e-10);
        EXPECT_NEAR(analytic_correlation_psi_plus(a, c), std::cos(a + c), 1e-15);
    }
}

TEST(Correlation, PhiPlusAgainstKroneckerOracle) {
    const auto phi = phi_plus();
    const std::vector<Complex> v(phi.amplitudes().begin(), phi.amplitudes().end());
    Rng rng(101);
    for (int k = 0; k < 100; ++k) {
        const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double c = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const double dense = dense_expectation(kron(to_dense(oracle_a(a)), to_dense(oracle_b(c))), v);
        EXPECT_NEAR(dense, std::cos(a - c), 1e-12);
        EXPECT_NEAR(correlation(phi, a, c), dense, 1e-10);
    }
}

TEST(Correlation, WrongQubitCount) {
    EXPECT_THROW(correlation(zero_state(1), 0.0, 0.0), DimensionError);
    EXPECT_THROW(correlation(zero_state(3), 0.0, 0.0), DimensionError);
}

TEST(AnalyticCorrelation, Values) {
    EXPECT_NEAR(analytic_correlation_psi_plus(kPiHalf, -kPiQuarter), 0.7071067812, 1e-10);
    EXPECT_DOUBLE_EQ(analytic_correlation_psi_plus(0.0, 0.0), 1.0);
    EXPECT_NEAR(analytic_correlation_psi_plus(kPiHalf, kPiHalf), -1.0, 1e-15);
}

TEST(SFactor, ReferenceSettings) {
    const auto top = s_factor(psi_plus(), {kPiHalf, 0.0, -kPiQuarter, kPiQuarter});
    EXPECT_NEAR(top.s_value, 2.0 * std::numbers::sqrt2, 1e-10);
    const auto zero = s_factor(psi_plus(), {kPiHalf, 0.0, -kPiQuarter, -3 * kPiQuarter});
    EXPECT_NEAR(zero.s_value, 0.0, 1e-10);
}

// For a product state the correlation factorizes: E = <A(alpha)>_0 <B(chi)>_1.
double factorized_s(const QubitAmplitudes &q0, const QubitAmplitudes &q1, const MeasurementSettings &s) {
    auto side = [](const QubitAmplitudes &q, const Matrix2 &m) {
        Complex total = 0.0;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                total += std::conj(q[r]) * m(r, c) * q[c];
            }
        }
        return total.real();
    };
    auto e = [&](double a, double c) { return side(q0, oracle_a(a)) * side(q1, oracle_b(c)); };
    return e(s.alpha1, s.chi1) - e(s.alpha1, s.chi2) + e(s.alpha2, s.chi1) + e(s.alpha2, s.chi2);
}

TEST(SFactor, ProductStatesObeyClassicalBound) {
    Rng rng(200);
    for (int k = 0; k < 200; ++k) {
        const auto q0 = random_qubit(rng);
        const auto q1 = random_qubit(rng);
        const auto state = product_state({q0, q1});
        const MeasurementSettings s{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4),
                                    rng.uniform(-4, 4)};
        const double value = s_factor(state, s).s_value;
        EXPECT_NEAR(value, factorized_s(q0, q1, s), 1e-10);
        EXPECT_LE(std::abs(value), 2.0 + 1e-9);
    }
    const auto zz = s_factor(product_state({{1.0, 0.0}, {1.0, 0.0}}), {0.3, 1.2, -0.4, 2.2});
    EXPECT_LE(std::abs(zz.s_value), 2.0 + 1e-9);
}

TEST(SFactor, QuantumBoundOnRandomStates) {
    Rng rng(300);
    for (int k = 0; k < 500; ++k) {
        const auto state = random_state(2, rng);
        const MeasurementSettings s{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4),
                                    rng.uniform(-4, 4)};
        const auto r = s_factor(state, s);
        EXPECT_LE(std::abs(r.s_value), kTsirelson + 1e-9);
        EXPECT_NEAR(r.recombined(), r.s_value, 1e-12);
        for (double e : r.correlations) {
            EXPECT_LE(std::abs(e), 1.0 + 1e-10);
        }
    }
}

TEST(SFactor, PeriodicInEveryAngle) {
    Rng rng(400);
    for (int k = 0; k < 100; ++k) {
        const auto state = random_state(2, rng);
        const MeasurementSettings s{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                                    rng.uniform(-3, 3)};
        const double base = s_factor(state, s).s_value;
        const double two_pi = 2.0 * std::numbers::pi;
        EXPECT_NEAR(s_factor(state, {s.alpha1 + two_pi, s.alpha2, s.chi1, s.chi2}).s_value, base, 1e-10);
        EXPECT_NEAR(s_factor(state, {s.alpha1, s.alpha2 - two_pi, s.chi1, s.chi2}).s_value, base, 1e-10);
        EXPECT_NEAR(s_factor(state, {s.alpha1, s.alpha2, s.chi1 + 2 * two_pi, s.chi2}).s_value, base, 1e-10);
        EXPECT_NEAR(s_factor(state, {s.alpha1, s.alpha2, s.chi1, s.chi2 - two_pi}).s_value, base, 1e-10);
    }
}

// Exact minimum of the fixed-(alpha1, chi1) slice. For fixed a2 the chi2 terms
// are (1 - sin a2) sin c2 + cos a2 cos c2, whose minimum is -sqrt(2 - 2 sin a2),
// leaving a one-dimensional search.
double slice_minimum() {
    double lowest = 10.0;
    constexpr int kSteps = 1000000;
    for (int i = 0; i <= kSteps; ++i) {
        const double a = -std::numbers::pi + 2 * std::numbers::pi * i / kSteps;
        lowest = std::min(lowest, std::cos(kPiQuarter) + std::cos(a - kPiQuarter) -
                                      std::sqrt(2.0 - 2.0 * std::sin(a)));
    }
    return lowest;
}

TEST(ScanS, FixedAngleSurface) {
    const auto grid = scan_s(psi_plus(), kPiHalf, -kPiQuarter, 201);
    ASSERT_EQ(grid.s_values.size(), 201U * 201U);
    const auto hi = grid.max();
    EXPECT_NEAR(hi.value, 2.0 * std::numbers::sqrt2, 2e-3);
    EXPECT_NEAR(hi.alpha2, 0.0, 1e-12);
    EXPECT_NEAR(hi.chi2, kPiQuarter, 1e-12);
    const auto lo = grid.min();
    EXPECT_NEAR(lo.value, slice_minimum(), 2e-3);
    // alpha2 = 0 is index 100, chi2 = -3pi/4 is index 25.
    EXPECT_NEAR(grid.alpha2_axis[100], 0.0, 1e-15);
    EXPECT_NEAR(grid.chi2_axis[25], -3 * kPiQuarter, 1e-15);
    EXPECT_NEAR(grid.at(100, 25), 0.0, 1e-10);
    for (double v : grid.s_values) {
        EXPECT_LE(std::abs(v), kTsirelson + 1e-9);
    }
}

TEST(ScanS, SliceMinimumAndFullRange) {
    // E11 = cos(pi/4) is pinned by the fixed angles, so the slice cannot reach
    // the lower end of the full range.
    const double slice = slice_minimum();
    EXPECT_NEAR(slice, -2.19067, 1e-5);
    EXPECT_GT(slice, -2.0 * std::numbers::sqrt2 + 0.5);
    // Brute-force cross-check of the reduction on the two-dimensional closed form.
    double lowest = 10.0;
    for (int i = 0; i <= 2000; ++i) {
        for (int j = 0; j <= 2000; ++j) {
            const double a = -std::numbers::pi + 2 * std::numbers::pi * i / 2000.0;
            const double c = -std::numbers::pi + 2 * std::numbers::pi * j / 2000.0;
            lowest = std::min(lowest, std::cos(kPiQuarter) - std::cos(kPiHalf + c) +
                                          std::cos(a - kPiQuarter) + std::cos(a + c));
        }
    }
    EXPECT_NEAR(lowest, slice, 1e-5);
    // With all four angles free the range is symmetric: shifting both alphas by
    // pi negates every correlation.
    const auto bottom = s_factor(psi_plus(), {-kPiHalf, std::numbers::pi, -kPiQuarter, kPiQuarter});
    EXPECT_NEAR(bottom.s_value, -2.0 * std::numbers::sqrt2, 1e-10);
}

TEST(ScanS, ResolutionTwoAndErrors) {
    const auto grid = scan_s(psi_plus(), kPiHalf, -kPiQuarter, 2);
    ASSERT_EQ(grid.alpha2_axis.size(), 2U);
    EXPECT_EQ(grid.alpha2_axis[0], -std::numbers::pi);
    EXPECT_EQ(grid.alpha2_axis[1], std::numbers::pi);
    EXPECT_EQ(grid.chi2_axis[1], std::numbers::pi);
    EXPECT_EQ(grid.s_values.size(), 4U);
    EXPECT_THROW(scan_s(psi_plus(), 0, 0, 1), ConfigError);
}

TEST(MaximizeS, FixedAngles) {
    const auto best = maximize_s(psi_plus(), std::pair{kPiHalf, -kPiQuarter});
    EXPECT_NEAR(best.s_star, 2.0 * std::numbers::sqrt2, 1e-6);
    EXPECT_NEAR(best.settings.alpha2, 0.0, 1e-4);
    EXPECT_NEAR(best.settings.chi2, kPiQuarter, 1e-4);
    EXPECT_DOUBLE_EQ(best.settings.alpha1, kPiHalf);
    EXPECT_DOUBLE_EQ(best.settings.chi1, -kPiQuarter);
}

TEST(MaximizeS, AllFreeReachesTsirelson) {
    const auto best = maximize_s(psi_plus());
    EXPECT_NEAR(best.s_star, 2.0 * std::numbers::sqrt2, 1e-6);
    const auto phi = maximize_s(phi_plus());
    EXPECT_NEAR(phi.s_star, 2.0 * std::numbers::sqrt2, 1e-6);
    for (double a : {best.settings.alpha1, best.settings.alpha2, best.settings.chi1, best.settings.chi2}) {
        EXPECT_GE(a, -std::numbers::pi);
        EXPECT_LE(a, std::numbers::pi);
    }
    // Deterministic: the same call gives the same argmax.
    EXPECT_EQ(maximize_s(psi_plus()).settings, best.settings);
}

TEST(MaximizeS, ProductStates) {
    // |00> has zero expectation for every equatorial observable, so S vanishes
    // identically.
    const auto zz = maximize_s(product_state({{1.0, 0.0}, {1.0, 0.0}}));
    EXPECT_NEAR(zz.s_star, 0.0, 1e-12);
    // |++> reaches the classical bound: E = cos(alpha) cos(chi).
    const double r = 1.0 / std::sqrt(2.0);
    const auto pp = maximize_s(product_state({{r, r}, {r, r}}));
    EXPECT_NEAR(pp.s_star, 2.0, 1e-6);
}

} // namespace
