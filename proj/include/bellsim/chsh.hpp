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
 * CHSH analysis of two-qubit states.
 *
 * The measured observables are the equatorial spin components
 *
 *   A(alpha) = |a+><a+| - |a-><a-|,  |a+-> = (|0> +- e^{i alpha}|1>)/sqrt(2)
 *   B(chi)   = |b+><b+| - |b-><b-|,  |b+-> = (|1> +- e^{i chi}|0>)/sqrt(2)
 *
 * on qubits 0 and 1 respectively, and the S-factor is
 *
 *   S = E(a1, c1) - E(a1, c2) + E(a2, c1) + E(a2, c2).
 *
 * For |psi+> the correlation is E(alpha, chi) = cos(alpha + chi); for |phi+> it
 * is cos(alpha - chi).
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "bellsim/angle.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/matrix2.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

inline constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

/// A +-1-valued single-qubit observable with its construction recorded.
class Observable2x2 {
  public:
    enum class Side { A, B };

    Observable2x2(Side side, double angle, const Matrix2 &entries)
        : side_(side), angle_(angle), entries_(entries) {}

    [[nodiscard]] Side side() const { return side_; }
    [[nodiscard]] double angle() const { return angle_; }
    [[nodiscard]] const Matrix2 &matrix() const { return entries_; }
    [[nodiscard]] Complex operator()(int r, int c) const { return entries_(r, c); }

  private:
    Side side_;
    double angle_;
    Matrix2 entries_;
};

/// A-side observable: off-diagonal e^{-i alpha} (row 0) and e^{+i alpha}.
inline Observable2x2 observable_a(double alpha) {
    const double a = wrap_angle(alpha);
    return {Observable2x2::Side::A, a,
            Matrix2{{0.0, std::polar(1.0, -a), std::polar(1.0, a), 0.0}}};
}

/// B-side observable: off-diagonal e^{+i chi} (row 0) and e^{-i chi}.
inline Observable2x2 observable_b(double chi) {
    const double c = wrap_angle(chi);
    return {Observable2x2::Side::B, c,
            Matrix2{{0.0, std::polar(1.0, c), std::polar(1.0, -c), 0.0}}};
}

struct MeasurementSettings {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;

    [[nodiscard]] MeasurementSettings wrapped() const {
        return {wrap_angle(alpha1), wrap_angle(alpha2), wrap_angle(chi1), wrap_angle(chi2)};
    }

    friend bool operator==(const MeasurementSettings &, const MeasurementSettings &) = default;
};

/// Correlations are stored as E11, E12, E21, E22 (E_ij = E(alpha_i, chi_j)).
struct SFactorResult {
    MeasurementSettings settings;
    std::array<double, 4> correlations{};
    double s_value = 0.0;

    [[nodiscard]] double recombined() const {
        return correlations[0] - correlations[1] + correlations[2] + correlations[3];
    }
};

inline double chsh_combination(double e11, double e12, double e21, double e22) {
    return e11 - e12 + e21 + e22;
}

inline void require_two_qubits(const StateVector &state) {
    if (state.num_qubits() != 2) {
        throw DimensionError("CHSH analysis needs a two-qubit state, got " +
                             std::to_string(state.num_qubits()) + " qubits");
    }
}

/// E(alpha, chi) = <state| A(alpha) (x) B(chi) |state>.
inline double correlation(const StateVector &state, double alpha, double chi,
                          EngineConfig cfg = {}) {
    require_two_qubits(state);
    return expectation(state, observable_a(alpha).matrix(), 0, observable_b(chi).matrix(), 1, cfg);
}

/// Closed form of the |psi+> correlation.
inline double analytic_correlation_psi_plus(double alpha, double chi) {
    return std::cos(alpha + chi);
}

inline SFactorResult s_factor(const StateVector &state, const MeasurementSettings &settings,
                              EngineConfig cfg = {}) {
    require_two_qubits(state);
    SFactorResult result;
    result.settings = settings;
    result.correlations = {correlation(state, settings.alpha1, settings.chi1, cfg),
                           correlation(state, settings.alpha1, settings.chi2, cfg),
                           correlation(state, settings.alpha2, settings.chi1, cfg),
                           correlation(state, settings.alpha2, settings.chi2, cfg)};
    result.s_value = result.recombined();
    return result;
}

/// Inclusive uniform axis over [-pi, pi]; both endpoints are exact.
inline std::vector<double> angle_axis(std::size_t points) {
    if (points < 2) {
        throw ConfigError("an angle axis needs at least 2 points");
    }
    std::vector<double> axis(points);
    const double step = 2.0 * kPi / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) {
        axis[k] = -kPi + step * static_cast<double>(k);
    }
    axis.front() = -kPi;
    axis.back() = kPi;
    return axis;
}

/// S over the (alpha2, chi2) plane with alpha1 and chi1 held fixed.
struct CorrelationGrid {
    double alpha1 = 0.0;
    double chi1 = 0.0;
    std::vector<double> alpha2_axis;
    std::vector<double> chi2_axis;
    std::vector<double> s_values; // row-major: index i * chi2_axis.size() + j

    [[nodiscard]] double at(std::size_t i, std::size_t j) const {
        return s_values.at(i * chi2_axis.size() + j);
    }

    struct Extremum {
        double value = 0.0;
        double alpha2 = 0.0;
        double chi2 = 0.0;
    };

    /// First cell (row-major order) attaining the maximum.
    [[nodiscard]] Extremum max() const { return extremum(std::greater<>()); }
    [[nodiscard]] Extremum min() const { return extremum(std::less<>()); }

  private:
    template <typename Better> Extremum extremum(Better better) const {
        Extremum best{s_values.at(0), alpha2_axis.at(0), chi2_axis.at(0)};
        for (std::size_t i = 0; i < alpha2_axis.size(); ++i) {
            for (std::size_t j = 0; j < chi2_axis.size(); ++j) {
                if (better(at(i, j), best.value)) {
                    best = {at(i, j), alpha2_axis[i], chi2_axis[j]};
                }
            }
        }
        return best;
    }
};

inline CorrelationGrid scan_s(const StateVector &state, double alpha1, double chi1,
                              std::size_t resolution, EngineConfig cfg = {}) {
    if (resolution < 2) {
        throw ConfigError("scan resolution must be at least 2, got " + std::to_string(resolution));
    }
    require_two_qubits(state);
    CorrelationGrid grid;
    grid.alpha1 = alpha1;
    grid.chi1 = chi1;
    grid.alpha2_axis = angle_axis(resolution);
    grid.chi2_axis = grid.alpha2_axis;

    // E(alpha1, chi1) is shared by every cell; the other three terms depend on
    // one axis each except E(alpha2, chi2).
    const double e11 = correlation(state, alpha1, chi1, cfg);
    std::vector<double> e12(resolution);
    std::vector<double> e21(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        e12[k] = correlation(state, alpha1, grid.chi2_axis[k], cfg);
        e21[k] = correlation(state, grid.alpha2_axis[k], chi1, cfg);
    }
    grid.s_values.resize(resolution * resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
            const double e22 = correlation(state, grid.alpha2_axis[i], grid.chi2_axis[j], cfg);
            grid.s_values[i * resolution + j] = chsh_combination(e11, e12[j], e21[i], e22);
        }
    }
    return grid;
}

struct MaximizeOptions {
    std::size_t grid_points = 101;
    double step_tolerance = 1e-7;
    std::size_t max_sweeps = 20000;
};

struct MaximizeResult {
    MeasurementSettings settings;
    double s_star = 0.0;
};

namespace detail {

/// Golden-section search for the maximum of `f` on [lo, hi].
template <typename F> double golden_section_max(F &&f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

/// Cyclic coordinate ascent with golden-section line searches of half-width
/// `radius`. Stops once a full sweep moves no coordinate by `step_tol` or more.
template <std::size_t N, typename F>
std::array<double, N> coordinate_ascent(F &&f, std::array<double, N> x, double radius,
                                        double step_tol, std::size_t max_sweeps) {
    double fx = f(x);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double largest_step = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            auto along = [&](double v) {
                auto y = x;
                y[k] = v;
                return f(y);
            };
            const double candidate =
                golden_section_max(along, x[k] - radius, x[k] + radius, step_tol * 1e-2);
            const double fc = along(candidate);
            if (fc > fx) {
                largest_step = std::max(largest_step, std::abs(candidate - x[k]));
                x[k] = candidate;
                fx = fc;
            }
        }
        if (largest_step < step_tol) {
            break;
        }
    }
    return x;
}

} // namespace detail

/// Maximizes S over the free angles: a uniform grid search (first hit in
/// lexicographic (alpha1, alpha2, chi1, chi2) order wins ties) followed by
/// derivative-free coordinate refinement. With `fixed` set, only (alpha2, chi2)
/// are free.
inline MaximizeResult maximize_s(const StateVector &state,
                                 std::optional<std::pair<double, double>> fixed = std::nullopt,
                                 MaximizeOptions options = {}, EngineConfig cfg = {}) {
    require_two_qubits(state);
    const std::vector<double> axis = angle_axis(options.grid_points);
    const std::size_t m = axis.size();
    const double radius = 2.0 * kPi / static_cast<double>(m - 1);
    constexpr double kTie = 1e-12;
    auto corr = [&](double a, double c) { return correlation(state, a, c, cfg); };

    MeasurementSettings best;
    if (fixed) {
        const auto [alpha1, chi1] = *fixed;
        const double e11 = corr(alpha1, chi1);
        double best_s = -std::numeric_limits<double>::infinity();
        for (double a2 : axis) {
            for (double c2 : axis) {
                const double s = chsh_combination(e11, corr(alpha1, c2), corr(a2, chi1), corr(a2, c2));
                if (s > best_s + kTie) {
                    best_s = s;
                    best = {alpha1, a2, chi1, c2};
                }
            }
        }
        auto objective = [&](const std::array<double, 2> &x) {
            return s_factor(state, {alpha1, x[0], chi1, x[1]}, cfg).s_value;
        };
        const auto refined = detail::coordinate_ascent<2>(objective, {best.alpha2, best.chi2}, radius,
                                                          options.step_tolerance, options.max_sweeps);
        best.alpha2 = refined[0];
        best.chi2 = refined[1];
    } else {
        // For fixed (alpha1, alpha2) the chi1 and chi2 terms separate:
        //   S = [E(a1,c1) + E(a2,c1)] + [E(a2,c2) - E(a1,c2)]
        // so the 4-D grid maximum is found exactly by two 1-D maximizations.
        std::vector<double> table(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                table[i * m + j] = corr(axis[i], axis[j]);
            }
        }
        double best_s = -std::numeric_limits<double>::infinity();
        for (std::size_t a1 = 0; a1 < m; ++a1) {
            for (std::size_t a2 = 0; a2 < m; ++a2) {
                std::size_t c1_best = 0;
                std::size_t c2_best = 0;
                double t1 = -std::numeric_limits<double>::infinity();
                double t2 = -std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < m; ++c) {
                    const double v1 = table[a1 * m + c] + table[a2 * m + c];
                    const double v2 = table[a2 * m + c] - table[a1 * m + c];
                    if (v1 > t1 + kTie) {
                        t1 = v1;
                        c1_best = c;
                    }
                    if (v2 > t2 + kTie) {
                        t2 = v2;
                        c2_best = c;
                    }
                }
                if (t1 + t2 > best_s + kTie) {
                    best_s = t1 + t2;
                    best = {axis[a1], axis[a2], axis[c1_best], axis[c2_best]};
                }
            }
        }
        auto objective = [&](const std::array<double, 4> &x) {
            return s_factor(state, {x[0], x[1], x[2], x[3]}, cfg).s_value;
        };
        const auto refined = detail::coordinate_ascent<4>(
            objective, {best.alpha1, best.alpha2, best.chi1, best.chi2}, radius,
            options.step_tolerance, options.max_sweeps);
        best = {refined[0], refined[1], refined[2], refined[3]};
    }

    if (fixed) {
        best.alpha2 = wrap_angle(best.alpha2);
        best.chi2 = wrap_angle(best.chi2);
    } else {
        best = best.wrapped();
    }
    return {best, s_factor(state, best, cfg).s_value};
}

} // namespace bellsim
