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

#include "bellsim/statevector.hpp"
#include "test_support.hpp"

namespace {

using namespace bellsim;
using namespace bellsim::testing;

const double r = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const StateVector &s, std::initializer_list<Complex> expected, double tol = 1e-12) {
    ASSERT_EQ(s.dimension(), expected.size());
    std::size_t k = 0;
    for (const Complex &e : expected) {
        EXPECT_NEAR(std::abs(s.amplitude(k) - e), 0.0, tol) << "index " << k;
        ++k;
    }
}

TEST(PrepareNamed, BellStates) {
    expect_amplitudes(psi_plus(), {0.0, r, r, 0.0});
    expect_amplitudes(phi_plus(), {r, 0.0, 0.0, r});
}

TEST(PrepareNamed, ZeroAndProduct) {
    expect_amplitudes(zero_state(1), {1.0, 0.0});
    expect_amplitudes(product_state({{1.0, 0.0}, {0.0, 1.0}}), {0.0, 1.0, 0.0, 0.0});
    expect_amplitudes(zero_state(3), {1.0, 0, 0, 0, 0, 0, 0, 0});
}

TEST(PrepareNamed, Errors) {
    EXPECT_THROW(product_state({{1.0, 1.0}}), NormalizationError);
    EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), DimensionError);
    EXPECT_THROW(StateVector::from_amplitudes({0.5, 0.5}), NormalizationError);
    EXPECT_THROW(StateVector(13), SizeError);
    EXPECT_THROW(StateVector(0), SizeError);
    EXPECT_NO_THROW(StateVector(12));
}

TEST(ApplyGate, HadamardAndBellPreparation) {
    expect_amplitudes(apply_gate(zero_state(1), GateOp::single(GateKind::H, 0)), {r, r});
    auto s = apply_gate(zero_state(2), GateOp::single(GateKind::H, 0));
    s = apply_gate(s, GateOp::controlled(GateKind::CNOT, 0, 1));
    expect_amplitudes(s, {r, 0.0, 0.0, r});
}

TEST(ApplyGate, QubitOrderingIsMostSignificantFirst) {
    // X on qubit 0 of |00> gives |10>, basis index 2.
    expect_amplitudes(apply_gate(zero_state(2), GateOp::single(GateKind::X, 0)), {0, 0, 1.0, 0});
    expect_amplitudes(apply_gate(zero_state(2), GateOp::single(GateKind::X, 1)), {0, 1.0, 0, 0});
}

TEST(ApplyGate, IndexErrors) {
    EXPECT_THROW(apply_gate(zero_state(2), GateOp::single(GateKind::H, 2)), QubitIndexError);
    EXPECT_THROW(apply_gate(zero_state(2), GateOp::controlled(GateKind::CNOT, 1, 1)), QubitIndexError);
    EXPECT_THROW(apply_gate(zero_state(2), GateOp::controlled(GateKind::CZ, 0, 5)), QubitIndexError);
}

TEST(ApplyGate, RzHalfPiIsSUpToPhase) {
    // Matrix-level oracle: RZ(pi/2) = e^{-i pi/4} S.
    const Matrix2 rz = gate_matrix(GateOp::rotation(GateKind::RZ, 0, std::numbers::pi / 2));
    const Matrix2 s = gate_matrix(GateOp::single(GateKind::S, 0));
    EXPECT_TRUE(equal_up_to_phase(rz, s, 1e-12));
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const auto psi = random_state(1, rng);
        const auto a = apply_gate(psi, GateOp::rotation(GateKind::RZ, 0, std::numbers::pi / 2));
        const auto b = apply_gate(psi, GateOp::single(GateKind::S, 0));
        EXPECT_NEAR(fidelity(a, b), 1.0, 1e-10);
    }
}

TEST(ApplyGate, RotationsMatchClosedForms) {
    // RX = H RZ H and RY = S RX S^dagger, up to phase.
    const Matrix2 h = gate_matrix(GateOp::single(GateKind::H, 0));
    const Matrix2 s = gate_matrix(GateOp::single(GateKind::S, 0));
    for (double theta : {0.3, -1.1, 2.7}) {
        const Matrix2 rz = gate_matrix(GateOp::rotation(GateKind::RZ, 0, theta));
        const Matrix2 rx = gate_matrix(GateOp::rotation(GateKind::RX, 0, theta));
        const Matrix2 ry = gate_matrix(GateOp::rotation(GateKind::RY, 0, theta));
        EXPECT_TRUE(equal_up_to_phase(rx, h * rz * h, 1e-12));
        EXPECT_TRUE(equal_up_to_phase(ry, s * rx * s.adjoint(), 1e-12));
    }
}

TEST(ApplyGate, NormPreservedAndInverseRestores) {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        const StateVector start = random_state(n, rng);
        StateVector s = start;
        std::vector<GateOp> applied;
        for (int k = 0; k < 30; ++k) {
            applied.push_back(random_gate(n, rng));
            s = apply_gate(std::move(s), applied.back());
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
        }
        for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
            s = apply_gate(std::move(s), inverse(*it));
        }
        EXPECT_NEAR(fidelity(s, start), 1.0, 1e-10);
    }
}

TEST(MeasureQubit, DeterministicAndUniform) {
    Rng rng(0);
    const auto m = measure_qubit(zero_state(1), 0, rng);
    EXPECT_EQ(m.outcome, 0);
    EXPECT_DOUBLE_EQ(m.probability, 1.0);

    const auto plus = apply_gate(zero_state(1), GateOp::single(GateKind::H, 0));
    for (int k = 0; k < 10; ++k) {
        EXPECT_NEAR(measure_qubit(plus, 0, rng).probability, 0.5, 1e-12);
    }
}

TEST(MeasureQubit, CollapsePsiPlus) {
    Rng rng(0);
    const auto m = measure_qubit(psi_plus(), 0, rng, 0);
    EXPECT_EQ(m.outcome, 0);
    EXPECT_NEAR(m.probability, 0.5, 1e-12);
    expect_amplitudes(m.collapsed, {0.0, 1.0, 0.0, 0.0});
}

TEST(MeasureQubit, ImpossibleForcedOutcome) {
    Rng rng(0);
    EXPECT_THROW(measure_qubit(zero_state(1), 0, rng, 1), ProjectionError);
    EXPECT_THROW(measure_qubit(zero_state(1), 1, rng), QubitIndexError);
}

TEST(MeasureQubit, BornConsistencyAndSeedReproducibility) {
    Rng gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + gen.below(4);
        const auto s = random_state(n, gen);
        for (std::size_t q = 0; q < n; ++q) {
            const double p1 = probability_one(s, q);
            Rng a(trial);
            const auto m = measure_qubit(s, q, a);
            const double other = m.outcome == 1 ? 1.0 - p1 : p1;
            EXPECT_NEAR(m.probability + other, 1.0, 1e-12);
            EXPECT_NEAR(m.collapsed.norm_squared(), 1.0, 1e-10);
            Rng b(trial);
            EXPECT_EQ(measure_qubit(s, q, b).outcome, m.outcome);
        }
    }
}

TEST(MeasureQubit, EmpiricalFrequencyMatchesBorn) {
    const auto s = apply_gate(zero_state(1), GateOp::rotation(GateKind::RY, 0, 1.0));
    const double p1 = probability_one(s, 0);
    Rng rng(9);
    int ones = 0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        ones += measure_qubit(s, 0, rng).outcome;
    }
    EXPECT_NEAR(static_cast<double>(ones) / n, p1, 4.0 * std::sqrt(p1 * (1 - p1) / n));
}

TEST(Expectation, AgainstKroneckerOracle) {
    const auto psi = psi_plus();
    const std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
    const Dense xx = kron(to_dense(pauli::X), to_dense(pauli::X));
    EXPECT_NEAR(dense_expectation(xx, v), 1.0, 1e-12);
    EXPECT_NEAR(expectation(psi, pauli::X, 0, pauli::X, 1), 1.0, 1e-12);
    EXPECT_NEAR(expectation(zero_state(2), pauli::Z, 0, pauli::Z, 1), 1.0, 1e-12);

    Rng rng(5);
    const std::array<Matrix2, 3> paulis = {pauli::X, pauli::Y, pauli::Z};
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(2, rng);
        const std::vector<Complex> w(s.amplitudes().begin(), s.amplitudes().end());
        const auto &a = paulis[rng.below(3)];
        const auto &b = paulis[rng.below(3)];
        EXPECT_NEAR(expectation(s, a, 0, b, 1), dense_expectation(kron(to_dense(a), to_dense(b)), w),
                    1e-12);
        // Swapping the factor order must swap the Kronecker order.
        EXPECT_NEAR(expectation(s, a, 1, b, 0), dense_expectation(kron(to_dense(b), to_dense(a)), w),
                    1e-12);
    }
}

TEST(Expectation, BoundedForPlusMinusOneObservables) {
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(3);
        const auto s = random_state(n, rng);
        const double t1 = rng.uniform(-3, 3);
        const double t2 = rng.uniform(-3, 3);
        const Matrix2 a{{std::cos(t1), std::sin(t1), std::sin(t1), -std::cos(t1)}};
        const Matrix2 b{{0.0, std::polar(1.0, t2), std::polar(1.0, -t2), 0.0}};
        const std::size_t i = rng.below(n);
        const std::size_t j = (i + 1 + rng.below(n - 1)) % n;
        EXPECT_LE(std::abs(expectation(s, a, i, b, j)), 1.0 + 1e-10);
    }
}

TEST(Expectation, RejectsNonHermitian) {
    const Matrix2 bad{{0.0, 1.0, 0.0, 0.0}};
    EXPECT_THROW(expectation(psi_plus(), bad, 0, pauli::X, 1), ObservableError);
    EXPECT_THROW(expectation(psi_plus(), pauli::X, 0, pauli::X, 0), QubitIndexError);
}

TEST(ReducedDensity, Examples) {
    const auto rho = reduced_density(product_state({{1.0, 0.0}, {0.0, 1.0}}), 0);
    EXPECT_NEAR(std::abs(rho(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(rho(1, 1)), 0.0, 1e-12);

    const auto mixed = reduced_density(psi_plus(), 0);
    EXPECT_NEAR(mixed(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(mixed(1, 1).real(), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(mixed(0, 1)), 0.0, 1e-12);
}

TEST(ReducedDensity, ProductFactorIsOuterProduct) {
    for (double theta : {0.0, 0.4, 1.3, 2.9}) {
        const QubitAmplitudes q{std::cos(theta), std::sin(theta)};
        const auto rho = reduced_density(product_state({q, {1.0, 0.0}}), 0);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                EXPECT_NEAR(std::abs(rho(a, b) - q[a] * std::conj(q[b])), 0.0, 1e-12);
            }
        }
    }
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_state(3, rng);
        for (std::size_t q = 0; q < 3; ++q) {
            EXPECT_NEAR(reduced_density(s, q).entries().trace().real(), 1.0, 1e-10);
        }
    }
}

TEST(Fidelity, Examples) {
    const auto zero = zero_state(1);
    const auto one = apply_gate(zero, GateOp::single(GateKind::X, 0));
    const auto plus = apply_gate(zero, GateOp::single(GateKind::H, 0));
    EXPECT_NEAR(fidelity(zero, zero), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
    EXPECT_NEAR(fidelity(zero, plus), 0.5, 1e-12);
    EXPECT_THROW(fidelity(zero, psi_plus()), DimensionError);
}

TEST(Fidelity, IgnoresGlobalPhase) {
    Rng rng(6);
    const auto s = random_state(2, rng);
    std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
    for (auto &a : rotated) {
        a *= std::polar(1.0, 1.234);
    }
    EXPECT_NEAR(fidelity(s, StateVector::from_amplitudes(rotated)), 1.0, 1e-12);
}

TEST(Fidelity, DensityMatrixForms) {
    const auto plus = DensityMatrix2x2::pure({r, r});
    const auto zero = DensityMatrix2x2::pure({1.0, 0.0});
    EXPECT_NEAR(fidelity(plus, plus), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(plus, zero), 0.5, 1e-12);
    EXPECT_NEAR(fidelity(zero, zero_state(1)), 1.0, 1e-12);
    const auto mixed = reduced_density(psi_plus(), 0);
    EXPECT_NEAR(fidelity(mixed, zero), 0.5, 1e-12);
    EXPECT_THROW(fidelity(zero, psi_plus()), DimensionError);
}

TEST(DensityMatrix, ValidatesInvariants) {
    EXPECT_THROW(DensityMatrix2x2(Matrix2{{1.0, 0.5, 0.0, 0.0}}), InputError);
    EXPECT_THROW(DensityMatrix2x2(Matrix2{{0.5, 0.0, 0.0, 0.6}}), InputError);
    EXPECT_THROW(DensityMatrix2x2(Matrix2{{1.5, 0.0, 0.0, -0.5}}), InputError);
}

} // namespace
