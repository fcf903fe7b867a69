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
 * Stabilizer tableau engine for Clifford circuits.
 *
 * Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. Each row is a
 * Hermitian Pauli product stored as x/z bit masks (bit j = qubit j) plus a sign
 * bit; (x, z) = (1, 1) on a qubit denotes Y. Gate updates are O(n), Z
 * measurement O(n^2).
 */

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/gates.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

inline constexpr std::size_t kMaxTableauQubits = 64;

/// Tolerance used to recognise rotation angles as multiples of pi/2.
inline constexpr double kCliffordAngleTolerance = 1e-12;

enum class CliffordKind { H, S, SDG, X, Y, Z, CNOT, CZ };

struct CliffordGate {
    CliffordKind kind = CliffordKind::H;
    std::array<std::size_t, 2> qubits{};

    static CliffordGate single(CliffordKind kind, std::size_t q) { return {kind, {q, q}}; }
    static CliffordGate two(CliffordKind kind, std::size_t a, std::size_t b) {
        return {kind, {a, b}};
    }
    [[nodiscard]] std::size_t arity() const {
        return (kind == CliffordKind::CNOT || kind == CliffordKind::CZ) ? 2 : 1;
    }

    friend bool operator==(const CliffordGate &, const CliffordGate &) = default;
};

/// Signed Pauli product on up to 64 qubits.
struct PauliRow {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool negative = false;

    friend bool operator==(const PauliRow &, const PauliRow &) = default;

    /// "+XZI"-style text, qubit 0 first.
    [[nodiscard]] std::string to_string(std::size_t num_qubits) const {
        std::string out(1, negative ? '-' : '+');
        for (std::size_t j = 0; j < num_qubits; ++j) {
            const bool xb = ((x >> j) & 1U) != 0;
            const bool zb = ((z >> j) & 1U) != 0;
            out.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
        }
        return out;
    }

    static PauliRow parse(std::string_view text) {
        PauliRow row;
        std::size_t start = 0;
        if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
            row.negative = text[0] == '-';
            start = 1;
        }
        for (std::size_t j = start; j < text.size(); ++j) {
            const std::uint64_t bit = std::uint64_t{1} << (j - start);
            switch (text[j]) {
            case 'I': break;
            case 'X': row.x |= bit; break;
            case 'Z': row.z |= bit; break;
            case 'Y': row.x |= bit; row.z |= bit; break;
            default: throw InputError("bad Pauli letter in " + std::string(text));
            }
        }
        return row;
    }
};

/// True when the two Pauli products commute.
inline bool commutes(const PauliRow &a, const PauliRow &b) {
    return (std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0;
}

/// Decomposes a gate from the general gate set into tableau gates. Rotations
/// are accepted when their angle is a multiple of pi/2 within `angle_tol`; T,
/// TDG and any other rotation raise NonCliffordGate.
inline std::vector<CliffordGate> clifford_decomposition(const GateOp &gate,
                                                        double angle_tol = kCliffordAngleTolerance) {
    const std::size_t q = gate.qubits[0];
    auto one = [q](CliffordKind k) { return CliffordGate::single(k, q); };
    switch (gate.kind) {
    case GateKind::H: return {one(CliffordKind::H)};
    case GateKind::X: return {one(CliffordKind::X)};
    case GateKind::Y: return {one(CliffordKind::Y)};
    case GateKind::Z: return {one(CliffordKind::Z)};
    case GateKind::S: return {one(CliffordKind::S)};
    case GateKind::SDG: return {one(CliffordKind::SDG)};
    case GateKind::CNOT:
        return {CliffordGate::two(CliffordKind::CNOT, gate.qubits[0], gate.qubits[1])};
    case GateKind::CZ:
        return {CliffordGate::two(CliffordKind::CZ, gate.qubits[0], gate.qubits[1])};
    case GateKind::T:
    case GateKind::TDG:
        throw NonCliffordGate("gate " + std::string(gate_name(gate.kind)) +
                              " is not Clifford");
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY: break;
    }

    const double theta = gate.angle.value_or(0.0);
    const double quarter = theta / (kPi / 2.0);
    const double k = std::round(quarter);
    if (std::abs(theta - k * (kPi / 2.0)) > angle_tol) {
        throw NonCliffordGate("gate " + std::string(gate_name(gate.kind)) + " " +
                              std::to_string(theta) +
                              " is not a multiple of pi/2");
    }
    std::vector<CliffordGate> z_power;
    switch (((static_cast<long long>(k) % 4) + 4) % 4) {
    case 1: z_power = {one(CliffordKind::S)}; break;
    case 2: z_power = {one(CliffordKind::Z)}; break;
    case 3: z_power = {one(CliffordKind::SDG)}; break;
    default: break;
    }
    // RX = H RZ H and RY = S RX SDG, up to global phase.
    std::vector<CliffordGate> out;
    if (gate.kind == GateKind::RY) {
        out.push_back(one(CliffordKind::SDG));
    }
    if (gate.kind != GateKind::RZ) {
        out.push_back(one(CliffordKind::H));
    }
    out.insert(out.end(), z_power.begin(), z_power.end());
    if (gate.kind != GateKind::RZ) {
        out.push_back(one(CliffordKind::H));
    }
    if (gate.kind == GateKind::RY) {
        out.push_back(one(CliffordKind::S));
    }
    return out;
}

inline bool is_clifford(const GateOp &gate, double angle_tol = kCliffordAngleTolerance) {
    try {
        (void)clifford_decomposition(gate, angle_tol);
        return true;
    } catch (const NonCliffordGate &) {
        return false;
    }
}

struct TableauMeasurement {
    int outcome = 0;
    bool deterministic = true;
};

class StabilizerTableau {
  public:
    /// |0...0>: destabilizers X_j, stabilizers +Z_j.
    explicit StabilizerTableau(std::size_t num_qubits) : n_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxTableauQubits) {
            throw SizeError("tableau supports 1..64 qubits, got " +
                            std::to_string(num_qubits));
        }
        rows_.resize(2 * n_);
        for (std::size_t j = 0; j < n_; ++j) {
            rows_[j].x = std::uint64_t{1} << j;
            rows_[n_ + j].z = std::uint64_t{1} << j;
        }
    }

    [[nodiscard]] std::size_t num_qubits() const { return n_; }
    [[nodiscard]] std::span<const PauliRow> rows() const { return rows_; }
    [[nodiscard]] const PauliRow &destabilizer(std::size_t i) const { return rows_.at(i); }
    [[nodiscard]] const PauliRow &stabilizer(std::size_t i) const { return rows_.at(n_ + i); }

    [[nodiscard]] std::vector<std::string> stabilizer_strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n_; ++i) {
            out.push_back(stabilizer(i).to_string(n_));
        }
        return out;
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_) {
            throw QubitIndexError("qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(n_) + " qubits");
        }
    }

    void apply(const CliffordGate &g) {
        check_qubit(g.qubits[0]);
        if (g.arity() == 2) {
            check_qubit(g.qubits[1]);
            if (g.qubits[0] == g.qubits[1]) {
                throw QubitIndexError("two-qubit gate needs distinct qubits");
            }
        }
        const std::uint64_t a = std::uint64_t{1} << g.qubits[0];
        const std::uint64_t b = std::uint64_t{1} << g.qubits[1];
        for (PauliRow &r : rows_) {
            const bool xa = (r.x & a) != 0;
            const bool za = (r.z & a) != 0;
            switch (g.kind) {
            case CliffordKind::H:
                r.negative ^= xa && za;
                set_bit(r.x, a, za);
                set_bit(r.z, a, xa);
                break;
            case CliffordKind::S:
                r.negative ^= xa && za;
                set_bit(r.z, a, za != xa);
                break;
            case CliffordKind::SDG:
                r.negative ^= xa && !za;
                set_bit(r.z, a, za != xa);
                break;
            case CliffordKind::X: r.negative ^= za; break;
            case CliffordKind::Z: r.negative ^= xa; break;
            case CliffordKind::Y: r.negative ^= xa != za; break;
            case CliffordKind::CNOT: {
                const bool xb = (r.x & b) != 0;
                const bool zb = (r.z & b) != 0;
                r.negative ^= xa && zb && (xb == za);
                set_bit(r.x, b, xb != xa);
                set_bit(r.z, a, za != zb);
                break;
            }
            case CliffordKind::CZ: {
                const bool xb = (r.x & b) != 0;
                const bool zb = (r.z & b) != 0;
                r.negative ^= xa && xb && (za != zb);
                set_bit(r.z, a, za != xb);
                set_bit(r.z, b, zb != xa);
                break;
            }
            }
        }
    }

    /// Expectation of a Hermitian Pauli product: +1 or -1 when it is (up to
    /// sign) in the stabilizer group, 0 otherwise.
    [[nodiscard]] int pauli_expectation(const PauliRow &p) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!commutes(p, stabilizer(i))) {
                return 0;
            }
        }
        PauliRow acc;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!commutes(p, destabilizer(i))) {
                multiply_into(acc, stabilizer(i));
            }
        }
        return acc.negative == p.negative ? 1 : -1;
    }

    /// Exact probability that measuring qubit q in Z yields 1.
    [[nodiscard]] double probability_one(std::size_t q) const {
        check_qubit(q);
        PauliRow zq;
        zq.z = std::uint64_t{1} << q;
        switch (pauli_expectation(zq)) {
        case 1: return 0.0;
        case -1: return 1.0;
        default: return 0.5;
        }
    }

    /// Z measurement. A random outcome consumes one rng bit unless `forced`
    /// picks it; forcing the impossible branch of a deterministic measurement
    /// throws ProjectionError.
    TableauMeasurement measure(std::size_t q, Rng &rng, std::optional<int> forced = std::nullopt) {
        check_qubit(q);
        if (forced && *forced != 0 && *forced != 1) {
            throw InputError("forced outcome must be 0 or 1");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        std::size_t pivot = 2 * n_;
        for (std::size_t i = n_; i < 2 * n_; ++i) {
            if ((rows_[i].x & bit) != 0) {
                pivot = i;
                break;
            }
        }

        if (pivot == 2 * n_) {
            PauliRow acc;
            for (std::size_t i = 0; i < n_; ++i) {
                if ((rows_[i].x & bit) != 0) {
                    multiply_into(acc, rows_[n_ + i]);
                }
            }
            const int outcome = acc.negative ? 1 : 0;
            if (forced && *forced != outcome) {
                throw ProjectionError("qubit " + std::to_string(q) +
                                      " is deterministically " + std::to_string(outcome));
            }
            return {outcome, true};
        }

        const int outcome = forced ? *forced : (rng.bit() ? 1 : 0);
        for (std::size_t i = 0; i < 2 * n_; ++i) {
            if (i != pivot && (rows_[i].x & bit) != 0) {
                multiply_into(rows_[i], rows_[pivot]);
            }
        }
        rows_[pivot - n_] = rows_[pivot];
        rows_[pivot] = PauliRow{0, bit, outcome == 1};
        return {outcome, false};
    }

    /// Empty when every tableau invariant holds, otherwise a description of the
    /// first violation.
    [[nodiscard]] std::optional<std::string> invariant_violation() const {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (i < j && !commutes(stabilizer(i), stabilizer(j))) {
                    return "stabilizers " + std::to_string(i) + " and " +
                           std::to_string(j) + " anticommute";
                }
                const bool anti = !commutes(destabilizer(i), stabilizer(j));
                if (anti != (i == j)) {
                    return "destabilizer " + std::to_string(i) + " has wrong relation to stabilizer " +
                           std::to_string(j);
                }
            }
        }
        // Rank over GF(2) of the 2n rows as 2n-bit vectors.
        std::vector<std::pair<std::uint64_t, std::uint64_t>> m;
        for (const PauliRow &r : rows_) {
            m.emplace_back(r.x, r.z);
        }
        std::size_t rank = 0;
        for (std::size_t col = 0; col < 2 * n_; ++col) {
            auto has = [&](const std::pair<std::uint64_t, std::uint64_t> &v) {
                return col < n_ ? ((v.first >> col) & 1U) != 0
                                : ((v.second >> (col - n_)) & 1U) != 0;
            };
            std::size_t sel = rank;
            while (sel < m.size() && !has(m[sel])) {
                ++sel;
            }
            if (sel == m.size()) {
                continue;
            }
            std::swap(m[rank], m[sel]);
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (r != rank && has(m[r])) {
                    m[r].first ^= m[rank].first;
                    m[r].second ^= m[rank].second;
                }
            }
            ++rank;
        }
        if (rank != 2 * n_) {
            return "rows are linearly dependent (rank " + std::to_string(rank) + ")";
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_valid() const { return !invariant_violation().has_value(); }

    /// Replaces `target` by the product target * factor, tracking the phase.
    static void multiply_into(PauliRow &target, const PauliRow &factor) {
        // Exponent of i picked up when multiplying single-qubit Paulis.
        int phase = (target.negative ? 2 : 0) + (factor.negative ? 2 : 0);
        std::uint64_t touched = factor.x | factor.z;
        while (touched != 0) {
            const int j = std::countr_zero(touched);
            touched &= touched - 1;
            const int x1 = static_cast<int>((factor.x >> j) & 1U);
            const int z1 = static_cast<int>((factor.z >> j) & 1U);
            const int x2 = static_cast<int>((target.x >> j) & 1U);
            const int z2 = static_cast<int>((target.z >> j) & 1U);
            if (x1 == 1 && z1 == 1) {
                phase += z2 - x2;
            } else if (x1 == 1) {
                phase += z2 * (2 * x2 - 1);
            } else if (z1 == 1) {
                phase += x2 * (1 - 2 * z2);
            }
        }
        target.negative = (((phase % 4) + 4) % 4) == 2;
        target.x ^= factor.x;
        target.z ^= factor.z;
    }

  private:
    static void set_bit(std::uint64_t &word, std::uint64_t bit, bool value) {
        word = value ? (word | bit) : (word & ~bit);
    }

    std::size_t n_;
    std::vector<PauliRow> rows_;
};

// --- free-function surface --------------------------------------------------

inline StabilizerTableau init_zero(std::size_t num_qubits) {
    return StabilizerTableau(num_qubits);
}

inline StabilizerTableau apply_clifford(StabilizerTableau t, const CliffordGate &g) {
    t.apply(g);
    return t;
}

/// Applies a general gate, failing with NonCliffordGate outside the Clifford set.
inline StabilizerTableau apply_gate(StabilizerTableau t, const GateOp &gate) {
    validate_gate(gate, t.num_qubits());
    for (const CliffordGate &g : clifford_decomposition(gate)) {
        t.apply(g);
    }
    return t;
}

struct MeasureZResult {
    int outcome = 0;
    bool deterministic = true;
    StabilizerTableau tableau;
};

inline MeasureZResult measure_z(StabilizerTableau t, std::size_t q, Rng &rng) {
    const TableauMeasurement m = t.measure(q, rng);
    return {m.outcome, m.deterministic, std::move(t)};
}

inline double outcome_probability(const StabilizerTableau &t, std::size_t q) {
    return t.probability_one(q);
}

/// Applies a Pauli product to a dense state in place.
inline void apply_pauli(StateVector &state, const PauliRow &p) {
    const std::size_t n = state.num_qubits();
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (((p.x >> j) & 1U) != 0) {
            xmask |= state.mask(j);
        }
        if (((p.z >> j) & 1U) != 0) {
            zmask |= state.mask(j);
        }
    }
    // Y = iXZ, so each Y contributes a factor i on top of the Z sign.
    static constexpr std::array<Complex, 4> kIPowers = {
        Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    Complex global = kIPowers[static_cast<std::size_t>(std::popcount(p.x & p.z)) % 4];
    if (p.negative) {
        global = -global;
    }
    auto &amps = state.raw();
    std::vector<Complex> out(amps.size());
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const double sign = (std::popcount(b & zmask) & 1) != 0 ? -1.0 : 1.0;
        out[b ^ xmask] = global * sign * amps[b];
    }
    amps = std::move(out);
}

/// Dense representative of the stabilizer state (global phase unspecified).
inline StateVector to_statevector(const StabilizerTableau &t) {
    const std::size_t n = t.num_qubits();
    if (n > kMaxStatevectorQubits) {
        throw SizeError("to_statevector supports at most " +
                        std::to_string(kMaxStatevectorQubits) + " qubits");
    }
    // A basis state in the support: measure everything, taking 0 on random
    // outcomes. No randomness is consumed.
    StabilizerTableau probe = t;
    Rng unused(0);
    std::size_t basis = 0;
    StateVector state(n);
    for (std::size_t q = 0; q < n; ++q) {
        const bool random = probe.probability_one(q) == 0.5;
        const auto m = probe.measure(q, unused, random ? std::optional<int>(0) : std::nullopt);
        if (m.outcome == 1) {
            basis |= state.mask(q);
        }
    }
    auto &amps = state.raw();
    amps.assign(amps.size(), Complex(0.0, 0.0));
    amps[basis] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        StateVector image = state;
        apply_pauli(image, t.stabilizer(i));
        for (std::size_t k = 0; k < amps.size(); ++k) {
            amps[k] = 0.5 * (amps[k] + image.amplitude(k));
        }
    }
    const double norm = std::sqrt(state.norm_squared());
    if (norm < 1e-12) {
        throw ProjectionError("stabilizer projection vanished; tableau is inconsistent");
    }
    state.scale(1.0 / norm);
    return state;
}

} // namespace bellsim
