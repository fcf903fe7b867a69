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

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "bellsim/errors.hpp"
#include "bellsim/matrix2.hpp"

namespace bellsim {

enum class GateKind { H, X, Y, Z, S, SDG, T, TDG, RZ, RX, RY, CNOT, CZ };

inline constexpr std::array<GateKind, 13> kAllGateKinds = {
    GateKind::H,  GateKind::X,   GateKind::Y,  GateKind::Z,  GateKind::S,
    GateKind::SDG, GateKind::T,  GateKind::TDG, GateKind::RZ, GateKind::RX,
    GateKind::RY, GateKind::CNOT, GateKind::CZ};

constexpr std::size_t gate_arity(GateKind kind) {
    return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

constexpr bool is_rotation(GateKind kind) {
    return kind == GateKind::RZ || kind == GateKind::RX || kind == GateKind::RY;
}

/// Lowercase mnemonic, as used by the circuit text format.
constexpr std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::SDG: return "sdg";
    case GateKind::T: return "t";
    case GateKind::TDG: return "tdg";
    case GateKind::RZ: return "rz";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::CNOT: return "cnot";
    case GateKind::CZ: return "cz";
    }
    return "?";
}

inline std::optional<GateKind> gate_from_name(std::string_view name) {
    for (GateKind kind : kAllGateKinds) {
        if (gate_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

/// One gate application. For two-qubit gates qubits[0] is the control.
struct GateOp {
    GateKind kind = GateKind::H;
    std::array<std::size_t, 2> qubits{};
    std::optional<double> angle;

    static GateOp single(GateKind kind, std::size_t q) {
        if (gate_arity(kind) != 1 || is_rotation(kind)) {
            throw InputError("gate " + std::string(gate_name(kind)) +
                             " is not a fixed single-qubit gate");
        }
        return {kind, {q, q}, std::nullopt};
    }
    static GateOp rotation(GateKind kind, std::size_t q, double theta) {
        if (!is_rotation(kind)) {
            throw InputError("gate " + std::string(gate_name(kind)) +
                             " takes no angle");
        }
        return {kind, {q, q}, theta};
    }
    static GateOp controlled(GateKind kind, std::size_t control, std::size_t target) {
        if (gate_arity(kind) != 2) {
            throw InputError("gate " + std::string(gate_name(kind)) +
                             " is not a two-qubit gate");
        }
        return {kind, {control, target}, std::nullopt};
    }

    [[nodiscard]] std::size_t arity() const { return gate_arity(kind); }

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

/// Throws QubitIndexError unless every index is < num_qubits and, for
/// two-qubit gates, distinct.
inline void validate_gate(const GateOp &gate, std::size_t num_qubits) {
    for (std::size_t k = 0; k < gate.arity(); ++k) {
        if (gate.qubits[k] >= num_qubits) {
            throw QubitIndexError("qubit " + std::to_string(gate.qubits[k]) +
                                  " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
        }
    }
    if (gate.arity() == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw QubitIndexError("two-qubit gate needs distinct qubits");
    }
    if (is_rotation(gate.kind) != gate.angle.has_value()) {
        throw InputError("angle must be present exactly for rotation gates");
    }
}

/// The 2x2 unitary of a single-qubit gate.
inline Matrix2 gate_matrix(const GateOp &gate) {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    switch (gate.kind) {
    case GateKind::H: return {{r, r, r, -r}};
    case GateKind::X: return pauli::X;
    case GateKind::Y: return pauli::Y;
    case GateKind::Z: return pauli::Z;
    case GateKind::S: return {{1.0, 0.0, 0.0, i}};
    case GateKind::SDG: return {{1.0, 0.0, 0.0, -i}};
    case GateKind::T: return {{1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)}};
    case GateKind::TDG: return {{1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 4.0)}};
    case GateKind::RZ: {
        const double h = 0.5 * gate.angle.value_or(0.0);
        return {{std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)}};
    }
    case GateKind::RX: {
        const double h = 0.5 * gate.angle.value_or(0.0);
        return {{std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h)}};
    }
    case GateKind::RY: {
        const double h = 0.5 * gate.angle.value_or(0.0);
        return {{std::cos(h), -std::sin(h), std::sin(h), std::cos(h)}};
    }
    case GateKind::CNOT:
    case GateKind::CZ:
        break;
    }
    throw InputError("no 2x2 matrix for two-qubit gate " +
                     std::string(gate_name(gate.kind)));
}

/// The gate undoing `gate`.
inline GateOp inverse(const GateOp &gate) {
    GateOp inv = gate;
    switch (gate.kind) {
    case GateKind::S: inv.kind = GateKind::SDG; break;
    case GateKind::SDG: inv.kind = GateKind::S; break;
    case GateKind::T: inv.kind = GateKind::TDG; break;
    case GateKind::TDG: inv.kind = GateKind::T; break;
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY: inv.angle = -gate.angle.value_or(0.0); break;
    default: break;
    }
    return inv;
}

} // namespace bellsim
