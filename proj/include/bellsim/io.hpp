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

// Text formats shared by the command-line tool and the tests.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/chsh.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/protocols.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

/// Header `alpha2,chi2,S`, one row per cell, row-major over alpha2 then chi2,
/// nine decimals, LF endings.
inline void write_scan_csv(std::ostream &out, const CorrelationGrid &grid) {
    out << "alpha2,chi2,S\n";
    for (std::size_t i = 0; i < grid.alpha2_axis.size(); ++i) {
        const std::string alpha = format_fixed(grid.alpha2_axis[i], 9);
        for (std::size_t j = 0; j < grid.chi2_axis.size(); ++j) {
            out << alpha << ',' << format_fixed(grid.chi2_axis[j], 9) << ','
                << format_fixed(grid.at(i, j), 9) << '\n';
        }
    }
}

inline void write_scan_csv(const std::string &path, const CorrelationGrid &grid) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_scan_csv(file, grid);
    file.flush();
    if (!file) {
        throw IoError("write to '" + path + "' failed");
    }
}

inline std::string format_s_factor(const SFactorResult &r) {
    std::ostringstream out;
    out << "E11=" << format_fixed(r.correlations[0], 9) << '\n'
        << "E12=" << format_fixed(r.correlations[1], 9) << '\n'
        << "E21=" << format_fixed(r.correlations[2], 9) << '\n'
        << "E22=" << format_fixed(r.correlations[3], 9) << '\n'
        << "S=" << format_fixed(r.s_value, 9) << '\n';
    return out.str();
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return parts;
}

inline double parse_real(std::string_view text) {
    const auto v = parse_angle(text);
    if (!v) {
        throw InputError("not a number: '" + std::string(text) + "'");
    }
    return *v;
}

} // namespace detail

/// One qubit from a name (`0`, `1`, `+`, `-`, `+i`, `-i` and their spelled-out
/// forms, or `T|+>`) or from two comma-separated real amplitudes `a0,a1`.
inline StateVector parse_qubit(std::string_view text) {
    if (text.find(',') != std::string_view::npos) {
        const auto parts = detail::split(text, ',');
        if (parts.size() != 2) {
            throw InputError("qubit amplitudes must be 'a0,a1'");
        }
        return single_qubit_state(detail::parse_real(parts[0]), detail::parse_real(parts[1]));
    }
    return prepare_input(input_preparation(text));
}

/// `psi-plus`, `phi-plus`, or `product:<qubit>/<qubit>` with qubits as in
/// parse_qubit.
inline StateVector parse_two_qubit_state(std::string_view text) {
    if (text == "psi-plus") {
        return psi_plus();
    }
    if (text == "phi-plus") {
        return phi_plus();
    }
    constexpr std::string_view kProduct = "product:";
    if (text.substr(0, kProduct.size()) == kProduct) {
        const auto parts = detail::split(text.substr(kProduct.size()), '/');
        if (parts.size() != 2) {
            throw InputError("product state needs two '/'-separated factors");
        }
        const StateVector a = parse_qubit(parts[0]);
        const StateVector b = parse_qubit(parts[1]);
        return product_state({QubitAmplitudes{a.amplitude(0), a.amplitude(1)},
                              QubitAmplitudes{b.amplitude(0), b.amplitude(1)}});
    }
    throw InputError("unknown state '" + std::string(text) + "'");
}

} // namespace bellsim
