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
 * Teleportation, superdense coding and BB84 drivers.
 *
 * Every run reports which engine executed it. Runs on the stabilizer engine
 * are classically simulable by construction; runs that need the dense engine
 * are not.
 */

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/gates.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/stabilizer.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

enum class Engine { Statevector, Stabilizer };

inline const char *to_string(Engine engine) {
    return engine == Engine::Statevector ? "statevector" : "stabilizer";
}

struct ProtocolReport {
    std::string protocol;
    Engine engine = Engine::Statevector;
    bool classically_simulable = false;
    std::map<std::string, double> metrics;
    /// Classical messages in the order they are sent.
    std::vector<int> classical_bits;

    ProtocolReport(std::string name, Engine e)
        : protocol(std::move(name)), engine(e), classically_simulable(e == Engine::Stabilizer) {}

    [[nodiscard]] double metric(const std::string &key) const { return metrics.at(key); }
};

/// Line-oriented `key=value` rendering. Long transcripts are summarized by
/// their length.
inline std::string format_report(const ProtocolReport &report, std::size_t max_inline_bits = 64) {
    std::ostringstream out;
    out << "protocol=" << report.protocol << '\n';
    out << "engine=" << to_string(report.engine) << '\n';
    out << "simulable=" << (report.classically_simulable ? "true" : "false") << '\n';
    for (const auto &[key, value] : report.metrics) {
        out << key << '=' << format_fixed(value, 10) << '\n';
    }
    if (report.classical_bits.size() <= max_inline_bits) {
        out << "classical_bits=";
        for (int b : report.classical_bits) {
            out << b;
        }
        out << '\n';
    } else {
        out << "classical_bits_count=" << report.classical_bits.size() << '\n';
    }
    return out.str();
}

/// Outcomes (m0, m1) of the Bell-basis measurement; set to force a branch.
using TeleportBranch = std::array<int, 2>;

// --- teleportation -----------------------------------------------------------

struct StatevectorTeleport {
    ProtocolReport report{"teleport", Engine::Statevector};
    DensityMatrix2x2 output = DensityMatrix2x2::pure({1.0, 0.0});
};

/// Teleports qubit 0 onto qubit 2 through a |phi+> pair on qubits 1 and 2:
/// CNOT(0,1), H(0), Z-measure 0 and 1, then X^m1 and Z^m0 on qubit 2.
inline StatevectorTeleport teleport_statevector(const StateVector &input, Rng &rng,
                                                std::optional<TeleportBranch> forced = std::nullopt,
                                                EngineConfig cfg = {}) {
    if (input.num_qubits() != 1) {
        throw DimensionError("teleportation input must be a single qubit");
    }
    if (std::abs(input.norm_squared() - 1.0) > cfg.tolerance) {
        throw NormalizationError("teleportation input is not normalized");
    }
    StateVector reg = product_state({QubitAmplitudes{input.amplitude(0), input.amplitude(1)},
                                     QubitAmplitudes{1.0, 0.0}, QubitAmplitudes{1.0, 0.0}},
                                    cfg);
    reg = apply_gate(std::move(reg), GateOp::single(GateKind::H, 1));
    reg = apply_gate(std::move(reg), GateOp::controlled(GateKind::CNOT, 1, 2));
    reg = apply_gate(std::move(reg), GateOp::controlled(GateKind::CNOT, 0, 1));
    reg = apply_gate(std::move(reg), GateOp::single(GateKind::H, 0));

    auto first = measure_qubit(reg, 0, rng, forced ? std::optional<int>((*forced)[0]) : std::nullopt);
    auto second = measure_qubit(first.collapsed, 1, rng,
                                forced ? std::optional<int>((*forced)[1]) : std::nullopt);
    reg = std::move(second.collapsed);
    if (second.outcome == 1) {
        reg = apply_gate(std::move(reg), GateOp::single(GateKind::X, 2));
    }
    if (first.outcome == 1) {
        reg = apply_gate(std::move(reg), GateOp::single(GateKind::Z, 2));
    }

    StatevectorTeleport result;
    result.output = reduced_density(reg, 2, cfg);
    result.report.metrics["fidelity"] = fidelity(result.output, input);
    result.report.metrics["branch_probability"] = first.probability * second.probability;
    result.report.classical_bits = {first.outcome, second.outcome};
    return result;
}

/// Gates preparing a named single-qubit input from |0>.
///
/// Stabilizer names: `0`, `1`, `+`, `-`, `+i`, `-i` (also `zero`, `one`,
/// `plus`, `minus`, `plus-i`, `minus-i`). `T|+>` (or `t-plus`) names the
/// magic state T H|0>, which only the dense engine can prepare.
inline std::vector<GateOp> input_preparation(std::string_view name) {
    auto g = [](GateKind k) { return GateOp::single(k, 0); };
    if (name == "0" || name == "zero") return {};
    if (name == "1" || name == "one") return {g(GateKind::X)};
    if (name == "+" || name == "plus") return {g(GateKind::H)};
    if (name == "-" || name == "minus") return {g(GateKind::X), g(GateKind::H)};
    if (name == "+i" || name == "plus-i") return {g(GateKind::H), g(GateKind::S)};
    if (name == "-i" || name == "minus-i") return {g(GateKind::H), g(GateKind::SDG)};
    if (name == "T|+>" || name == "t-plus") return {g(GateKind::H), g(GateKind::T)};
    throw InputError("unknown input state '" + std::string(name) + "'");
}

inline StateVector prepare_input(std::span<const GateOp> preparation) {
    return apply_gates(StateVector(1), preparation);
}

struct StabilizerTeleport {
    ProtocolReport report{"teleport", Engine::Stabilizer};
    StabilizerTableau final_state{3};
    /// Stabilizer of the input state, as a single-qubit Pauli on qubit 0.
    PauliRow input_stabilizer;
};

/// The teleportation circuit on the tableau engine. The input is given by its
/// preparation gates from |0>; a non-Clifford preparation raises
/// NonCliffordGate before anything else runs.
inline StabilizerTeleport teleport_stabilizer(std::span<const GateOp> preparation, Rng &rng,
                                              std::optional<TeleportBranch> forced = std::nullopt) {
    StabilizerTableau input(1);
    for (const GateOp &gate : preparation) {
        input = apply_gate(std::move(input), gate);
    }

    StabilizerTableau reg(3);
    for (const GateOp &gate : preparation) {
        reg = apply_gate(std::move(reg), gate);
    }
    reg.apply(CliffordGate::single(CliffordKind::H, 1));
    reg.apply(CliffordGate::two(CliffordKind::CNOT, 1, 2));
    reg.apply(CliffordGate::two(CliffordKind::CNOT, 0, 1));
    reg.apply(CliffordGate::single(CliffordKind::H, 0));
    const auto m0 = reg.measure(0, rng, forced ? std::optional<int>((*forced)[0]) : std::nullopt);
    const auto m1 = reg.measure(1, rng, forced ? std::optional<int>((*forced)[1]) : std::nullopt);
    if (m1.outcome == 1) {
        reg.apply(CliffordGate::single(CliffordKind::X, 2));
    }
    if (m0.outcome == 1) {
        reg.apply(CliffordGate::single(CliffordKind::Z, 2));
    }

    StabilizerTeleport result;
    result.input_stabilizer = input.stabilizer(0);
    // The same Pauli moved onto qubit 2.
    PauliRow on_output = result.input_stabilizer;
    on_output.x <<= 2;
    on_output.z <<= 2;
    const int expectation = reg.pauli_expectation(on_output);
    result.final_state = std::move(reg);
    result.report.metrics["fidelity"] = 0.5 * (1.0 + expectation);
    result.report.classical_bits = {m0.outcome, m1.outcome};
    return result;
}

inline StabilizerTeleport teleport_stabilizer(std::string_view input_name, Rng &rng,
                                              std::optional<TeleportBranch> forced = std::nullopt) {
    const auto prep = input_preparation(input_name);
    return teleport_stabilizer(prep, rng, forced);
}

// --- superdense coding -------------------------------------------------------

struct SuperdenseResult {
    ProtocolReport report{"superdense", Engine::Stabilizer};
    std::array<int, 2> decoded{};
};

/// Sends two classical bits through one qubit of a shared |phi+> pair. The
/// sender applies X if b2 and then Z if b1; the receiver undoes the Bell
/// preparation and measures both qubits.
inline SuperdenseResult superdense_code(int b1, int b2, Rng &rng) {
    if ((b1 != 0 && b1 != 1) || (b2 != 0 && b2 != 1)) {
        throw InputError("superdense bits must be 0 or 1");
    }
    StabilizerTableau reg(2);
    reg.apply(CliffordGate::single(CliffordKind::H, 0));
    reg.apply(CliffordGate::two(CliffordKind::CNOT, 0, 1));
    if (b2 == 1) {
        reg.apply(CliffordGate::single(CliffordKind::X, 0));
    }
    if (b1 == 1) {
        reg.apply(CliffordGate::single(CliffordKind::Z, 0));
    }
    reg.apply(CliffordGate::two(CliffordKind::CNOT, 0, 1));
    reg.apply(CliffordGate::single(CliffordKind::H, 0));

    SuperdenseResult result;
    double min_probability = 1.0;
    for (std::size_t q = 0; q < 2; ++q) {
        const double p1 = reg.probability_one(q);
        const auto m = reg.measure(q, rng);
        min_probability = std::min(min_probability, m.outcome == 1 ? p1 : 1.0 - p1);
        result.decoded[q] = m.outcome;
    }
    result.report.metrics["decode_probability"] = min_probability;
    result.report.metrics["success"] = (result.decoded[0] == b1 && result.decoded[1] == b2) ? 1.0 : 0.0;
    result.report.classical_bits = {result.decoded[0], result.decoded[1]};
    return result;
}

// --- BB84 ---------------------------------------------------------------------

/// BB84 key distribution on the tableau engine, optionally with an
/// intercept-resend eavesdropper measuring in a uniformly random basis.
///
/// Per round the rng is consumed in a fixed order: sender bit, sender basis,
/// [eavesdropper basis, eavesdropper outcome], receiver basis, receiver
/// outcome (outcome bits only when the measurement is random). The transcript
/// holds the sender's basis announcements followed by the receiver's.
inline ProtocolReport bb84_simulate(std::size_t rounds, bool intercept_resend, Rng &rng) {
    if (rounds < 1) {
        throw ConfigError("BB84 needs at least one round");
    }
    ProtocolReport report("bb84", Engine::Stabilizer);
    std::vector<int> sender_bases;
    std::vector<int> receiver_bases;
    sender_bases.reserve(rounds);
    receiver_bases.reserve(rounds);

    // Prepares bit in basis (0 = Z, 1 = X) with the gates I, X, H or X then H.
    auto prepare = [](int bit, int basis) {
        StabilizerTableau q(1);
        if (bit == 1) {
            q.apply(CliffordGate::single(CliffordKind::X, 0));
        }
        if (basis == 1) {
            q.apply(CliffordGate::single(CliffordKind::H, 0));
        }
        return q;
    };
    auto measure_in = [&rng](StabilizerTableau &q, int basis) {
        if (basis == 1) {
            q.apply(CliffordGate::single(CliffordKind::H, 0));
        }
        return q.measure(0, rng).outcome;
    };

    std::size_t kept = 0;
    std::size_t errors = 0;
    for (std::size_t round = 0; round < rounds; ++round) {
        const int bit = rng.bit() ? 1 : 0;
        const int basis = rng.bit() ? 1 : 0;
        StabilizerTableau channel = prepare(bit, basis);
        if (intercept_resend) {
            const int eve_basis = rng.bit() ? 1 : 0;
            const int eve_bit = measure_in(channel, eve_basis);
            channel = prepare(eve_bit, eve_basis);
        }
        const int bob_basis = rng.bit() ? 1 : 0;
        const int bob_bit = measure_in(channel, bob_basis);
        sender_bases.push_back(basis);
        receiver_bases.push_back(bob_basis);
        if (basis == bob_basis) {
            ++kept;
            if (bit != bob_bit) {
                ++errors;
            }
        }
    }

    report.metrics["rounds"] = static_cast<double>(rounds);
    report.metrics["sifted"] = static_cast<double>(kept);
    report.metrics["errors"] = static_cast<double>(errors);
    report.metrics["sift_rate"] = static_cast<double>(kept) / static_cast<double>(rounds);
    report.metrics["qber"] = kept == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(kept);
    report.classical_bits = std::move(sender_bases);
    report.classical_bits.insert(report.classical_bits.end(), receiver_bases.begin(),
                                 receiver_bases.end());
    return report;
}

} // namespace bellsim
