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

/**
 * @file
 * Dense statevector engine for small registers.
 *
 * Qubit 0 is the leftmost tensor factor and therefore the most significant
 * bit of a basis index: for two qubits the basis order is |00>, |01>, |10>,
 * |11> with the first digit belonging to qubit 0.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/errors.hpp"
#include "bellsim/gates.hpp"
#include "bellsim/matrix2.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

inline constexpr std::size_t kMaxStatevectorQubits = 12;

/// Single-qubit amplitudes (a0, a1) for a|0> + b|1>.
using QubitAmplitudes = std::array<Complex, 2>;

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
        check_size(num_qubits);
        amplitudes_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
        amplitudes_[0] = 1.0;
    }

    /// Wraps explicit amplitudes. The length must be a power of two and the
    /// vector normalized within the configured tolerance.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                       EngineConfig cfg = {}) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < amplitudes.size()) {
            ++n;
        }
        if (amplitudes.empty() || (std::size_t{1} << n) != amplitudes.size() || n == 0) {
            throw DimensionError("amplitude count " +
                                 std::to_string(amplitudes.size()) +
                                 " is not 2^n with n >= 1");
        }
        check_size(n);
        StateVector state(n, std::move(amplitudes));
        const double deviation = std::abs(state.norm_squared() - 1.0);
        if (deviation > cfg.tolerance) {
            throw NormalizationError("squared norm deviates from 1 by " +
                                     std::to_string(deviation));
        }
        return state;
    }

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
    [[nodiscard]] Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }

    [[nodiscard]] double norm_squared() const {
        double total = 0.0;
        for (const Complex &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

    /// Basis-index bit owned by qubit q.
    [[nodiscard]] std::size_t mask(std::size_t q) const {
        return std::size_t{1} << (num_qubits_ - 1 - q);
    }

    void check_qubit(std::size_t q) const {
        if (q >= num_qubits_) {
            throw QubitIndexError("qubit " + std::to_string(q) +
                                  " out of range for " +
                                  std::to_string(num_qubits_) + " qubits");
        }
    }

    // Mutating kernels. The free functions below copy first, so callers only
    // see value semantics.
    void apply_single(const Matrix2 &u, std::size_t q) {
        const std::size_t bit = mask(q);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & bit) != 0) {
                continue;
            }
            const Complex a0 = amplitudes_[i];
            const Complex a1 = amplitudes_[i | bit];
            amplitudes_[i] = u(0, 0) * a0 + u(0, 1) * a1;
            amplitudes_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }

    void apply_cnot(std::size_t control, std::size_t target) {
        const std::size_t cbit = mask(control);
        const std::size_t tbit = mask(target);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & cbit) != 0 && (i & tbit) == 0) {
                std::swap(amplitudes_[i], amplitudes_[i | tbit]);
            }
        }
    }

    void apply_cz(std::size_t a, std::size_t b) {
        const std::size_t both = mask(a) | mask(b);
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if ((i & both) == both) {
                amplitudes_[i] = -amplitudes_[i];
            }
        }
    }

    void scale(double factor) {
        for (Complex &a : amplitudes_) {
            a *= factor;
        }
    }

    std::vector<Complex> &raw() { return amplitudes_; }

  private:
    StateVector(std::size_t n, std::vector<Complex> amplitudes)
        : num_qubits_(n), amplitudes_(std::move(amplitudes)) {}

    static void check_size(std::size_t n) {
        if (n < 1 || n > kMaxStatevectorQubits) {
            throw SizeError("statevector engine supports 1.." +
                            std::to_string(kMaxStatevectorQubits) +
                            " qubits, got " + std::to_string(n));
        }
    }

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

// --- named states -----------------------------------------------------------

inline StateVector zero_state(std::size_t num_qubits) { return StateVector(num_qubits); }

/// 2^(-1/2)(|01> + |10>)
inline StateVector psi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes({0.0, r, r, 0.0});
}

/// 2^(-1/2)(|00> + |11>)
inline StateVector phi_plus() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector::from_amplitudes({r, 0.0, 0.0, r});
}

/// Tensor product of single-qubit factors, first factor = qubit 0.
inline StateVector product_state(std::span<const QubitAmplitudes> factors,
                                 EngineConfig cfg = {}) {
    if (factors.empty()) {
        throw DimensionError("product state needs at least one factor");
    }
    std::vector<Complex> amps{1.0};
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto &f = factors[k];
        const double norm = std::norm(f[0]) + std::norm(f[1]);
        if (std::abs(norm - 1.0) > cfg.tolerance) {
            throw NormalizationError("factor " + std::to_string(k) +
                                     " has squared norm " + std::to_string(norm));
        }
        std::vector<Complex> next;
        next.reserve(amps.size() * 2);
        for (const Complex &a : amps) {
            next.push_back(a * f[0]);
            next.push_back(a * f[1]);
        }
        amps = std::move(next);
    }
    return StateVector::from_amplitudes(std::move(amps), cfg);
}

inline StateVector product_state(std::initializer_list<QubitAmplitudes> factors,
                                 EngineConfig cfg = {}) {
    return product_state(std::span<const QubitAmplitudes>(factors.begin(), factors.size()),
                         cfg);
}

inline StateVector single_qubit_state(Complex a0, Complex a1, EngineConfig cfg = {}) {
    return StateVector::from_amplitudes({a0, a1}, cfg);
}

// --- gates ------------------------------------------------------------------

/// Applies `gate` and returns the new state.
inline StateVector apply_gate(StateVector state, const GateOp &gate) {
    validate_gate(gate, state.num_qubits());
    switch (gate.kind) {
    case GateKind::CNOT: state.apply_cnot(gate.qubits[0], gate.qubits[1]); break;
    case GateKind::CZ: state.apply_cz(gate.qubits[0], gate.qubits[1]); break;
    default: state.apply_single(gate_matrix(gate), gate.qubits[0]); break;
    }
    return state;
}

inline StateVector apply_gates(StateVector state, std::span<const GateOp> gates) {
    for (const GateOp &g : gates) {
        state = apply_gate(std::move(state), g);
    }
    return state;
}

// --- measurement ------------------------------------------------------------

/// Born probability that qubit q reads 1.
inline double probability_one(const StateVector &state, std::size_t q) {
    state.check_qubit(q);
    const std::size_t bit = state.mask(q);
    double p = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0) {
            p += std::norm(amps[i]);
        }
    }
    return p;
}

struct MeasurementResult {
    int outcome = 0;
    double probability = 0.0;
    StateVector collapsed;
};

/// Z-basis measurement of qubit q.
///
/// Draws one uniform double from `rng` unless `forced` is given, in which case
/// that outcome is projected onto without consuming randomness. Forcing an
/// outcome of (numerically) zero probability throws ProjectionError.
inline MeasurementResult measure_qubit(const StateVector &state, std::size_t q,
                                       Rng &rng, std::optional<int> forced = std::nullopt) {
    state.check_qubit(q);
    const double p1 = probability_one(state, q);
    int outcome = 0;
    if (forced) {
        if (*forced != 0 && *forced != 1) {
            throw InputError("forced outcome must be 0 or 1");
        }
        outcome = *forced;
    } else {
        outcome = rng.uniform() < p1 ? 1 : 0;
    }
    const double probability = outcome == 1 ? p1 : 1.0 - p1;
    if (probability < 1e-12) {
        throw ProjectionError("outcome " + std::to_string(outcome) + " on qubit " +
                              std::to_string(q) + " has probability " +
                              std::to_string(probability));
    }
    StateVector collapsed = state;
    const std::size_t bit = state.mask(q);
    auto &amps = collapsed.raw();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (((i & bit) != 0) != (outcome == 1)) {
            amps[i] = 0.0;
        }
    }
    collapsed.scale(1.0 / std::sqrt(probability));
    return {outcome, probability, std::move(collapsed)};
}

// --- observables ------------------------------------------------------------

/// <state| O_i (x) O_j |state> for single-qubit Hermitian observables acting on
/// distinct qubits i and j.
inline double expectation(const StateVector &state, const Matrix2 &on_i, std::size_t i,
                          const Matrix2 &on_j, std::size_t j, EngineConfig cfg = {}) {
    state.check_qubit(i);
    state.check_qubit(j);
    if (i == j) {
        throw QubitIndexError("observable factors must act on distinct qubits");
    }
    if (!is_hermitian(on_i, cfg.tolerance) || !is_hermitian(on_j, cfg.tolerance)) {
        throw ObservableError("observable is not Hermitian");
    }
    StateVector image = state;
    image.apply_single(on_i, i);
    image.apply_single(on_j, j);
    Complex total = 0.0;
    const auto amps = state.amplitudes();
    const auto img = image.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) {
        total += std::conj(amps[k]) * img[k];
    }
    return total.real();
}

/// Single-qubit observable expectation.
inline double expectation(const StateVector &state, const Matrix2 &obs, std::size_t q,
                          EngineConfig cfg = {}) {
    state.check_qubit(q);
    if (!is_hermitian(obs, cfg.tolerance)) {
        throw ObservableError("observable is not Hermitian");
    }
    StateVector image = state;
    image.apply_single(obs, q);
    Complex total = 0.0;
    for (std::size_t k = 0; k < state.dimension(); ++k) {
        total += std::conj(state.amplitude(k)) * image.amplitude(k);
    }
    return total.real();
}

// --- reduced states and fidelity ---------------------------------------------

/// Validated one-qubit density matrix.
class DensityMatrix2x2 {
  public:
    explicit DensityMatrix2x2(const Matrix2 &entries, EngineConfig cfg = {})
        : entries_(entries) {
        if (!is_hermitian(entries, cfg.tolerance)) {
            throw InputError("density matrix is not Hermitian");
        }
        if (std::abs(entries.trace() - 1.0) > cfg.tolerance) {
            throw InputError("density matrix trace is not 1");
        }
        if (hermitian_eigenvalues(entries).first < -cfg.tolerance) {
            throw InputError("density matrix has a negative eigenvalue");
        }
    }

    static DensityMatrix2x2 pure(const QubitAmplitudes &psi, EngineConfig cfg = {}) {
        Matrix2 rho;
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                rho(r, c) = psi[r] * std::conj(psi[c]);
            }
        }
        return DensityMatrix2x2(rho, cfg);
    }

    [[nodiscard]] const Matrix2 &entries() const { return entries_; }
    [[nodiscard]] Complex operator()(int r, int c) const { return entries_(r, c); }

  private:
    Matrix2 entries_;
};

/// Partial trace over every qubit except q.
inline DensityMatrix2x2 reduced_density(const StateVector &state, std::size_t q,
                                        EngineConfig cfg = {}) {
    state.check_qubit(q);
    const std::size_t bit = state.mask(q);
    Matrix2 rho;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return DensityMatrix2x2(rho, cfg);
}

/// |<a|b>|^2 for pure states of equal size.
inline double fidelity(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("fidelity between " + std::to_string(a.num_qubits()) +
                             " and " + std::to_string(b.num_qubits()) + " qubits");
    }
    Complex overlap = 0.0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        overlap += std::conj(a.amplitude(k)) * b.amplitude(k);
    }
    return std::min(1.0, std::norm(overlap));
}

/// Uhlmann fidelity. For 2x2 matrices the square-root form collapses to
/// tr(rho sigma) + 2 sqrt(det rho det sigma).
inline double fidelity(const DensityMatrix2x2 &a, const DensityMatrix2x2 &b) {
    const double overlap = (a.entries() * b.entries()).trace().real();
    const double dets = a.entries().determinant().real() * b.entries().determinant().real();
    const double f = overlap + 2.0 * std::sqrt(std::max(0.0, dets));
    return std::clamp(f, 0.0, 1.0);
}

/// <psi| rho |psi> for a one-qubit pure reference state.
inline double fidelity(const DensityMatrix2x2 &rho, const StateVector &psi) {
    if (psi.num_qubits() != 1) {
        throw DimensionError("reference state must be a single qubit");
    }
    Complex total = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            total += std::conj(psi.amplitude(r)) * rho(r, c) * psi.amplitude(c);
        }
    }
    return std::clamp(total.real(), 0.0, 1.0);
}

} // namespace bellsim
