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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bellsim/bellsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonSimulable = 3;

double angle_flag(const std::string &name, const std::string &text) {
    const auto value = bellsim::parse_angle(text);
    if (!value) {
        throw bellsim::InputError("--" + name + ": bad angle '" + text + "'");
    }
    return *value;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw bellsim::IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bellsim::EngineChoice engine_flag(const std::string &text) {
    if (text == "auto") return bellsim::EngineChoice::Auto;
    if (text == "statevector") return bellsim::EngineChoice::Statevector;
    if (text == "stabilizer") return bellsim::EngineChoice::Stabilizer;
    throw bellsim::InputError("unknown engine '" + text + "'");
}

void print_witnesses(const std::vector<bellsim::SourceLocation> &witnesses) {
    for (const auto &w : witnesses) {
        std::cout << "witness=line " << w.line << ", column " << w.column << '\n';
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"bellsim: statevector and stabilizer simulation, CHSH analysis and "
                 "local hidden variable models"};
    app.require_subcommand(1);

    // chsh-eval
    std::string state = "psi-plus";
    std::string alpha1 = "pi/2";
    std::string chi1 = "-pi/4";
    std::string alpha2 = "0";
    std::string chi2 = "pi/4";
    auto *eval = app.add_subcommand("chsh-eval", "Evaluate the four correlations and S");
    eval->add_option("--state", state, "psi-plus | phi-plus | product:<q>/<q>");
    eval->add_option("--alpha1", alpha1, "radians or pi token (use --alpha1=-pi/4 for negatives)");
    eval->add_option("--chi1", chi1);
    eval->add_option("--alpha2", alpha2);
    eval->add_option("--chi2", chi2);

    // chsh-scan
    std::size_t resolution = 201;
    std::string out_path;
    auto *scan = app.add_subcommand("chsh-scan", "Write S over the (alpha2, chi2) grid as CSV");
    scan->add_option("--state", state);
    scan->add_option("--alpha1", alpha1);
    scan->add_option("--chi1", chi1);
    scan->add_option("--resolution", resolution, "points per axis (>= 2)");
    scan->add_option("--out", out_path, "output file (stdout when omitted)");

    // chsh-max
    bool free_angles = false;
    auto *maximize = app.add_subcommand("chsh-max", "Maximize S over the measurement angles");
    maximize->add_option("--state", state);
    maximize->add_option("--alpha1", alpha1);
    maximize->add_option("--chi1", chi1);
    maximize->add_flag("--free", free_angles, "optimize all four angles");

    // lhv
    auto *lhv_bound = app.add_subcommand("lhv-bound", "Largest S of any local model");
    std::array<std::string, 4> targets{"0", "0", "0", "0"};
    double tol = bellsim::kLhvTolerance;
    auto *lhv_fit = app.add_subcommand("lhv-fit", "Fit a local model to four correlations");
    lhv_fit->add_option("--e11", targets[0])->required();
    lhv_fit->add_option("--e12", targets[1])->required();
    lhv_fit->add_option("--e21", targets[2])->required();
    lhv_fit->add_option("--e22", targets[3])->required();
    lhv_fit->add_option("--tol", tol);

    // protocols
    std::uint64_t seed = 0;
    std::string input = "0";
    std::string engine = "statevector";
    std::string branch;
    auto *teleport = app.add_subcommand("teleport", "Teleport one qubit");
    teleport->add_option("--input", input, "a0,a1 | 0 | 1 | plus | minus | plus-i | minus-i | T|+>");
    teleport->add_option("--engine", engine, "statevector | stabilizer");
    teleport->add_option("--branch", branch, "force Bell outcomes, e.g. 1,0");
    teleport->add_option("--seed", seed);

    std::string bits = "00";
    auto *superdense = app.add_subcommand("superdense", "Send two bits with one qubit");
    superdense->add_option("--bits", bits, "two bits, e.g. 10");
    superdense->add_option("--seed", seed);

    std::size_t rounds = 10000;
    bool eavesdrop = false;
    auto *bb84 = app.add_subcommand("bb84", "BB84 key distribution");
    bb84->add_option("--rounds", rounds);
    bb84->add_flag("--eavesdrop", eavesdrop, "intercept-resend eavesdropper");
    bb84->add_option("--seed", seed);

    // circuits
    std::string circuit_path;
    std::string run_engine = "auto";
    auto *run = app.add_subcommand("run", "Execute a circuit file");
    run->add_option("file", circuit_path)->required();
    run->add_option("--engine", run_engine, "auto | statevector | stabilizer");
    run->add_option("--seed", seed);
    auto *classify = app.add_subcommand("classify", "Classify a circuit file");
    classify->add_option("file", circuit_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            const auto s = bellsim::parse_two_qubit_state(state);
            const bellsim::MeasurementSettings settings{
                angle_flag("alpha1", alpha1), angle_flag("alpha2", alpha2),
                angle_flag("chi1", chi1), angle_flag("chi2", chi2)};
            std::cout << bellsim::format_s_factor(bellsim::s_factor(s, settings));
        } else if (scan->parsed()) {
            const auto s = bellsim::parse_two_qubit_state(state);
            const auto grid = bellsim::scan_s(s, angle_flag("alpha1", alpha1),
                                              angle_flag("chi1", chi1), resolution);
            if (out_path.empty()) {
                bellsim::write_scan_csv(std::cout, grid);
            } else {
                bellsim::write_scan_csv(out_path, grid);
                const auto hi = grid.max();
                const auto lo = grid.min();
                std::cout << "rows=" << grid.s_values.size() << '\n'
                          << "max_S=" << bellsim::format_fixed(hi.value, 9) << '\n'
                          << "min_S=" << bellsim::format_fixed(lo.value, 9) << '\n';
            }
        } else if (maximize->parsed()) {
            const auto s = bellsim::parse_two_qubit_state(state);
            std::optional<std::pair<double, double>> fixed;
            if (!free_angles) {
                fixed = {angle_flag("alpha1", alpha1), angle_flag("chi1", chi1)};
            }
            const auto best = bellsim::maximize_s(s, fixed);
            std::cout << "alpha1=" << bellsim::format_fixed(best.settings.alpha1, 9) << '\n'
                      << "alpha2=" << bellsim::format_fixed(best.settings.alpha2, 9) << '\n'
                      << "chi1=" << bellsim::format_fixed(best.settings.chi1, 9) << '\n'
                      << "chi2=" << bellsim::format_fixed(best.settings.chi2, 9) << '\n'
                      << "S=" << bellsim::format_fixed(best.s_star, 9) << '\n';
        } else if (lhv_bound->parsed()) {
            std::cout << "bound=" << bellsim::format_fixed(bellsim::classical_max_s(), 1) << '\n';
        } else if (lhv_fit->parsed()) {
            bellsim::Correlations e{};
            for (std::size_t k = 0; k < 4; ++k) {
                e[k] = angle_flag("e" + std::to_string(11 + (k / 2) * 10 + k % 2), targets[k]);
            }
            const auto model = bellsim::fit_lhv(e, tol);
            if (!model) {
                std::cout << "INFEASIBLE\n";
            } else {
                const auto strategies = bellsim::enumerate_strategies();
                for (std::size_t k = 0; k < bellsim::kNumStrategies; ++k) {
                    const auto &st = strategies[k];
                    std::cout << "w(" << st.a1 << ',' << st.a2 << ',' << st.b1 << ',' << st.b2
                              << ")=" << bellsim::format_fixed(model->weights()[k], 10) << '\n';
                }
                const auto c = bellsim::model_correlations(*model);
                std::cout << "S=" << bellsim::format_fixed(c[0] - c[1] + c[2] + c[3], 9) << '\n';
            }
        } else if (teleport->parsed()) {
            std::optional<bellsim::TeleportBranch> forced;
            if (!branch.empty()) {
                if (branch.size() != 3 || branch[1] != ',' ||
                    (branch[0] != '0' && branch[0] != '1') || (branch[2] != '0' && branch[2] != '1')) {
                    throw bellsim::InputError("--branch must look like 0,1");
                }
                forced = bellsim::TeleportBranch{branch[0] - '0', branch[2] - '0'};
            }
            bellsim::Rng rng(seed);
            if (engine == "statevector") {
                const auto result =
                    bellsim::teleport_statevector(bellsim::parse_qubit(input), rng, forced);
                std::cout << bellsim::format_report(result.report);
            } else if (engine == "stabilizer") {
                if (input.find(',') != std::string::npos) {
                    throw bellsim::NonCliffordGate(
                        "explicit amplitudes are not a stabilizer-state specification");
                }
                const auto result = bellsim::teleport_stabilizer(input, rng, forced);
                std::cout << bellsim::format_report(result.report);
                const auto stabs = result.final_state.stabilizer_strings();
                for (std::size_t k = 0; k < stabs.size(); ++k) {
                    std::cout << "stabilizer." << k << '=' << stabs[k] << '\n';
                }
            } else {
                throw bellsim::InputError("unknown engine '" + engine + "'");
            }
        } else if (superdense->parsed()) {
            if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
                (bits[1] != '0' && bits[1] != '1')) {
                throw bellsim::InputError("--bits must be two binary digits");
            }
            bellsim::Rng rng(seed);
            const auto result = bellsim::superdense_code(bits[0] - '0', bits[1] - '0', rng);
            std::cout << bellsim::format_report(result.report);
        } else if (bb84->parsed()) {
            bellsim::Rng rng(seed);
            std::cout << bellsim::format_report(bellsim::bb84_simulate(rounds, eavesdrop, rng));
        } else if (run->parsed()) {
            const auto circuit = bellsim::parse(read_file(circuit_path));
            const auto record = bellsim::run(circuit, engine_flag(run_engine), seed);
            std::cout << bellsim::format_run_record(record);
        } else if (classify->parsed()) {
            const auto circuit = bellsim::parse(read_file(circuit_path));
            const auto cls = bellsim::classify(circuit);
            std::cout << "class=" << bellsim::to_string(cls.value) << '\n';
            print_witnesses(cls.witnesses);
            return cls.value == bellsim::Simulability::StabilizerSimulable ? kExitOk
                                                                            : kExitNonSimulable;
        }
    } catch (const bellsim::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const bellsim::NonCliffordGate &e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto &w : e.witnesses()) {
            std::cerr << "witness=line " << w.line << ", column " << w.column << '\n';
        }
        return kExitNonSimulable;
    } catch (const bellsim::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case bellsim::ErrorKind::Input:
        case bellsim::ErrorKind::Config:
        case bellsim::ErrorKind::Normalization:
        case bellsim::ErrorKind::Size:
        case bellsim::ErrorKind::Dimension:
        case bellsim::ErrorKind::Io:
            return kExitUsage;
        default:
            return kExitInternal;
        }
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}
