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
 * Line-oriented circuit format, Clifford classification and dispatch.
 *
 *     # comment
 *     qubits 2
 *     h 0
 *     cnot 0 1
 *     rz 1 -pi/4
 *     measure 0
 *
 * The first non-blank, non-comment line declares the register size. Opcodes
 * are case-insensitive; rotations take a qubit then an angle (decimal radians
 * or a pi token, see parse_angle). `#` comments run to end of line.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/gates.hpp"
#include "bellsim/protocols.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/stabilizer.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==(const SourceLocation &, const SourceLocation &) = default;
};

/// A gate, or a Z-basis measurement when `gate` is empty.
struct Instruction {
    std::optional<GateOp> gate;
    std::size_t measured_qubit = 0;

    static Instruction measure(std::size_t q) { return {std::nullopt, q}; }
    static Instruction apply(GateOp g) { return {g, 0}; }

    [[nodiscard]] bool is_measure() const { return !gate.has_value(); }
    [[nodiscard]] std::string_view opcode() const {
        return gate ? gate_name(gate->kind) : std::string_view("measure");
    }

    friend bool operator==(const Instruction &, const Instruction &) = default;
};

struct Circuit {
    std::size_t num_qubits = 1;
    std::vector<Instruction> instructions;
    /// Location of each instruction's opcode, parallel to `instructions`.
    std::vector<SourceLocation> source_map;

    /// Equality of the program itself, ignoring source positions.
    [[nodiscard]] bool same_program(const Circuit &other) const {
        return num_qubits == other.num_qubits && instructions == other.instructions;
    }
};

enum class ParseErrorKind {
    MissingHeader,
    InvalidHeader,
    UnknownOpcode,
    WrongArity,
    MalformedQubit,
    QubitOutOfRange,
    DuplicateQubit,
    MalformedAngle,
};

inline const char *to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::MissingHeader: return "MissingHeader";
    case ParseErrorKind::InvalidHeader: return "InvalidHeader";
    case ParseErrorKind::UnknownOpcode: return "UnknownOpcode";
    case ParseErrorKind::WrongArity: return "WrongArity";
    case ParseErrorKind::MalformedQubit: return "MalformedQubit";
    case ParseErrorKind::QubitOutOfRange: return "QubitOutOfRange";
    case ParseErrorKind::DuplicateQubit: return "DuplicateQubit";
    case ParseErrorKind::MalformedAngle: return "MalformedAngle";
    }
    return "ParseError";
}

class ParseError : public Error {
  public:
    ParseError(ParseErrorKind kind, SourceLocation where, const std::string &detail)
        : Error(ErrorKind::Parse, std::string(to_string(kind)) + " at line " +
                                      std::to_string(where.line) + ", column " +
                                      std::to_string(where.column) + ": " + detail),
          parse_kind_(kind), where_(where) {}

    [[nodiscard]] ParseErrorKind parse_kind() const { return parse_kind_; }
    [[nodiscard]] std::size_t line() const { return where_.line; }
    [[nodiscard]] std::size_t column() const { return where_.column; }

  private:
    ParseErrorKind parse_kind_;
    SourceLocation where_;
};

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column = 0; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])) != 0) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])) == 0) {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::optional<std::size_t> parse_index(std::string_view text) {
    std::size_t value = 0;
    const char *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc() || ptr != last) {
        return std::nullopt;
    }
    return value;
}

} // namespace detail

inline constexpr std::size_t kMaxCircuitQubits = kMaxTableauQubits;

inline Circuit parse(std::string_view text) {
    Circuit circuit;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tokens = detail::tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string op = detail::lowercase(tokens[0].text);
        const SourceLocation at{line_no, tokens[0].column};

        if (!have_header) {
            if (op != "qubits") {
                throw ParseError(ParseErrorKind::MissingHeader, at,
                                 "expected 'qubits N' before '" + std::string(tokens[0].text) + "'");
            }
            if (tokens.size() != 2) {
                throw ParseError(ParseErrorKind::InvalidHeader, at, "expected 'qubits N'");
            }
            const auto n = detail::parse_index(tokens[1].text);
            if (!n || *n < 1 || *n > kMaxCircuitQubits) {
                throw ParseError(ParseErrorKind::InvalidHeader, {line_no, tokens[1].column},
                                 "qubit count must be an integer in 1..64");
            }
            circuit.num_qubits = *n;
            have_header = true;
            continue;
        }
        if (op == "qubits") {
            throw ParseError(ParseErrorKind::InvalidHeader, at, "duplicate 'qubits' header");
        }

        std::optional<GateKind> kind;
        if (op != "measure") {
            kind = gate_from_name(op);
            if (!kind) {
                throw ParseError(ParseErrorKind::UnknownOpcode, at,
                                 "unknown opcode '" + std::string(tokens[0].text) + "'");
            }
        }
        const std::size_t qubit_args = kind ? gate_arity(*kind) : 1;
        const bool wants_angle = kind && is_rotation(*kind);
        const std::size_t expected = 1 + qubit_args + (wants_angle ? 1 : 0);
        if (tokens.size() != expected) {
            throw ParseError(ParseErrorKind::WrongArity, at,
                             "'" + op + "' takes " + std::to_string(expected - 1) +
                                 " operand(s), got " + std::to_string(tokens.size() - 1));
        }
        std::array<std::size_t, 2> qubits{};
        for (std::size_t k = 0; k < qubit_args; ++k) {
            const auto &tok = tokens[1 + k];
            const auto q = detail::parse_index(tok.text);
            if (!q) {
                throw ParseError(ParseErrorKind::MalformedQubit, {line_no, tok.column},
                                 "bad qubit index '" + std::string(tok.text) + "'");
            }
            if (*q >= circuit.num_qubits) {
                throw ParseError(ParseErrorKind::QubitOutOfRange, {line_no, tok.column},
                                 "qubit " + std::to_string(*q) + " >= " +
                                     std::to_string(circuit.num_qubits));
            }
            qubits[k] = *q;
        }
        if (qubit_args == 2 && qubits[0] == qubits[1]) {
            throw ParseError(ParseErrorKind::DuplicateQubit, {line_no, tokens[2].column},
                             "two-qubit gate on the same qubit");
        }

        Instruction instr;
        if (!kind) {
            instr = Instruction::measure(qubits[0]);
        } else if (wants_angle) {
            const auto &tok = tokens.back();
            const auto angle = parse_angle(detail::lowercase(tok.text));
            if (!angle) {
                throw ParseError(ParseErrorKind::MalformedAngle, {line_no, tok.column},
                                 "bad angle '" + std::string(tok.text) + "'");
            }
            instr = Instruction::apply(GateOp::rotation(*kind, qubits[0], *angle));
        } else if (qubit_args == 2) {
            instr = Instruction::apply(GateOp::controlled(*kind, qubits[0], qubits[1]));
        } else {
            instr = Instruction::apply(GateOp::single(*kind, qubits[0]));
        }
        circuit.instructions.push_back(instr);
        circuit.source_map.push_back(at);
    }
    if (!have_header) {
        throw ParseError(ParseErrorKind::MissingHeader, {1, 1}, "no 'qubits N' header");
    }
    return circuit;
}

/// Canonical text: LF endings, lowercase opcodes, single spaces, shortest
/// round-trip angle literals.
inline std::string format_circuit(const Circuit &circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits) + "\n";
    for (const Instruction &instr : circuit.instructions) {
        out += instr.opcode();
        if (instr.is_measure()) {
            out += " " + std::to_string(instr.measured_qubit);
        } else {
            const GateOp &g = *instr.gate;
            for (std::size_t k = 0; k < g.arity(); ++k) {
                out += " " + std::to_string(g.qubits[k]);
            }
            if (g.angle) {
                out += " " + format_angle(*g.angle);
            }
        }
        out += "\n";
    }
    return out;
}

// --- classification ----------------------------------------------------------

enum class Simulability { StabilizerSimulable, RequiresStatevector };

inline const char *to_string(Simulability s) {
    return s == Simulability::StabilizerSimulable ? "StabilizerSimulable" : "RequiresStatevector";
}

struct SimulabilityClass {
    Simulability value = Simulability::StabilizerSimulable;
    /// Source locations of the non-Clifford instructions, in program order.
    std::vector<SourceLocation> witnesses;
    std::vector<std::size_t> witness_instructions;
};

inline SimulabilityClass classify(const Circuit &circuit) {
    SimulabilityClass result;
    for (std::size_t k = 0; k < circuit.instructions.size(); ++k) {
        const Instruction &instr = circuit.instructions[k];
        if (instr.is_measure() || is_clifford(*instr.gate)) {
            continue;
        }
        result.witness_instructions.push_back(k);
        result.witnesses.push_back(k < circuit.source_map.size() ? circuit.source_map[k]
                                                                 : SourceLocation{});
    }
    if (!result.witnesses.empty()) {
        result.value = Simulability::RequiresStatevector;
    }
    return result;
}

// --- execution ----------------------------------------------------------------

enum class EngineChoice { Auto, Statevector, Stabilizer };

struct MeasurementRecord {
    std::size_t instruction = 0;
    std::size_t qubit = 0;
    int outcome = 0;
    /// Probability of reading 1, evaluated just before the measurement.
    double probability_one = 0.0;
};

struct RunRecord {
    Engine engine = Engine::Statevector;
    std::vector<MeasurementRecord> measurements;
    /// Final amplitudes (statevector engine only).
    std::optional<std::vector<Complex>> amplitudes;
    /// Final stabilizer generators (stabilizer engine only).
    std::vector<std::string> stabilizers;
};

inline RunRecord run(const Circuit &circuit, EngineChoice choice, std::uint64_t seed) {
    const SimulabilityClass cls = classify(circuit);
    Engine engine = Engine::Statevector;
    switch (choice) {
    case EngineChoice::Statevector: engine = Engine::Statevector; break;
    case EngineChoice::Stabilizer:
        if (cls.value != Simulability::StabilizerSimulable) {
            std::vector<NonCliffordGate::Location> where;
            std::string lines;
            for (const auto &w : cls.witnesses) {
                where.push_back({w.line, w.column});
                lines += (lines.empty() ? "" : ", ") + std::to_string(w.line);
            }
            throw NonCliffordGate("circuit has non-Clifford instructions at line(s) " + lines,
                                  std::move(where));
        }
        engine = Engine::Stabilizer;
        break;
    case EngineChoice::Auto:
        engine = cls.value == Simulability::StabilizerSimulable ? Engine::Stabilizer
                                                                : Engine::Statevector;
        break;
    }

    Rng rng(seed);
    RunRecord record;
    record.engine = engine;
    if (engine == Engine::Statevector) {
        StateVector state(circuit.num_qubits);
        for (std::size_t k = 0; k < circuit.instructions.size(); ++k) {
            const Instruction &instr = circuit.instructions[k];
            if (instr.is_measure()) {
                const double p1 = probability_one(state, instr.measured_qubit);
                auto m = measure_qubit(state, instr.measured_qubit, rng);
                record.measurements.push_back({k, instr.measured_qubit, m.outcome, p1});
                state = std::move(m.collapsed);
            } else {
                state = apply_gate(std::move(state), *instr.gate);
            }
        }
        record.amplitudes = std::vector<Complex>(state.amplitudes().begin(), state.amplitudes().end());
    } else {
        StabilizerTableau tableau(circuit.num_qubits);
        for (std::size_t k = 0; k < circuit.instructions.size(); ++k) {
            const Instruction &instr = circuit.instructions[k];
            if (instr.is_measure()) {
                const double p1 = tableau.probability_one(instr.measured_qubit);
                const auto m = tableau.measure(instr.measured_qubit, rng);
                record.measurements.push_back({k, instr.measured_qubit, m.outcome, p1});
            } else {
                tableau = apply_gate(std::move(tableau), *instr.gate);
            }
        }
        record.stabilizers = tableau.stabilizer_strings();
    }
    return record;
}

inline std::string format_run_record(const RunRecord &record) {
    std::ostringstream out;
    out << "engine=" << to_string(record.engine) << '\n';
    out << "simulable=" << (record.engine == Engine::Stabilizer ? "true" : "false") << '\n';
    out << "measurements=" << record.measurements.size() << '\n';
    std::string outcomes;
    for (std::size_t k = 0; k < record.measurements.size(); ++k) {
        const auto &m = record.measurements[k];
        out << "m" << k << ".qubit=" << m.qubit << '\n';
        out << "m" << k << ".outcome=" << m.outcome << '\n';
        out << "m" << k << ".p1=" << format_fixed(m.probability_one, 10) << '\n';
        outcomes += static_cast<char>('0' + m.outcome);
    }
    out << "outcomes=" << outcomes << '\n';
    if (record.amplitudes) {
        for (std::size_t k = 0; k < record.amplitudes->size(); ++k) {
            const Complex a = (*record.amplitudes)[k];
            const std::string im = format_fixed(a.imag(), 10);
            out << "amplitude." << k << '=' << format_fixed(a.real(), 10)
                << (im.front() == '-' ? "" : "+") << im << "i\n";
        }
    }
    for (std::size_t k = 0; k < record.stabilizers.size(); ++k) {
        out << "stabilizer." << k << '=' << record.stabilizers[k] << '\n';
    }
    return out.str();
}

} // namespace bellsim
