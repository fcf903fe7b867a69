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
 * Local hidden variable models for the two-setting, two-outcome CHSH
 * experiment.
 *
 * A hidden variable is one of the 16 deterministic strategies (a1, a2, b1, b2)
 * and a model is a probability distribution over them. The set of correlation
 * vectors (E11, E12, E21, E22) reachable this way is the local polytope, which
 * is cut out by |E_ij| <= 1 and the eight CHSH inequalities.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/errors.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

inline constexpr std::size_t kNumStrategies = 16;
inline constexpr double kLhvTolerance = 1e-9;

struct DeterministicStrategy {
    int a1 = 1;
    int a2 = 1;
    int b1 = 1;
    int b2 = 1;

    [[nodiscard]] int a(std::size_t i) const { return i == 0 ? a1 : a2; }
    [[nodiscard]] int b(std::size_t j) const { return j == 0 ? b1 : b2; }

    friend bool operator==(const DeterministicStrategy &, const DeterministicStrategy &) = default;
};

/// All 16 sign assignments. Index bits (MSB first) are a1, a2, b1, b2 with a
/// set bit meaning -1, so a1 varies slowest and index 0 is all +1.
inline std::array<DeterministicStrategy, kNumStrategies> enumerate_strategies() {
    std::array<DeterministicStrategy, kNumStrategies> out{};
    for (std::size_t k = 0; k < kNumStrategies; ++k) {
        auto sign = [k](unsigned shift) { return ((k >> shift) & 1U) != 0 ? -1 : 1; };
        out[k] = {sign(3), sign(2), sign(1), sign(0)};
    }
    return out;
}

inline double strategy_s(const DeterministicStrategy &s) {
    return s.a1 * s.b1 - s.a1 * s.b2 + s.a2 * s.b1 + s.a2 * s.b2;
}

inline double classical_max_s() {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto &s : enumerate_strategies()) {
        best = std::max(best, strategy_s(s));
    }
    return best;
}

inline double classical_min_s() {
    double best = std::numeric_limits<double>::infinity();
    for (const auto &s : enumerate_strategies()) {
        best = std::min(best, strategy_s(s));
    }
    return best;
}

/// Correlations in E11, E12, E21, E22 order.
using Correlations = std::array<double, 4>;

class LhvModel {
  public:
    /// Validates and normalizes: weights >= -1e-12 (negatives clamped to 0)
    /// summing to 1 within 1e-10.
    explicit LhvModel(const std::array<double, kNumStrategies> &weights) : weights_(weights) {
        double total = 0.0;
        for (double &w : weights_) {
            if (!std::isfinite(w) || w < -1e-12) {
                throw ModelError("strategy weight " + std::to_string(w) + " is negative");
            }
            w = std::max(w, 0.0);
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-10) {
            throw ModelError("weights sum to " + std::to_string(total));
        }
    }

    static LhvModel point_mass(std::size_t index) {
        std::array<double, kNumStrategies> w{};
        w.at(index) = 1.0;
        return LhvModel(w);
    }

    static LhvModel uniform() {
        std::array<double, kNumStrategies> w{};
        w.fill(1.0 / kNumStrategies);
        return LhvModel(w);
    }

    [[nodiscard]] const std::array<double, kNumStrategies> &weights() const { return weights_; }

  private:
    std::array<double, kNumStrategies> weights_;
};

inline Correlations model_correlations(const LhvModel &model) {
    const auto strategies = enumerate_strategies();
    Correlations e{};
    for (std::size_t k = 0; k < kNumStrategies; ++k) {
        const double w = model.weights()[k];
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                e[2 * i + j] += w * strategies[k].a(i) * strategies[k].b(j);
            }
        }
    }
    return e;
}

inline double model_s(const LhvModel &model) {
    const Correlations e = model_correlations(model);
    return e[0] - e[1] + e[2] + e[3];
}

/// The eight CHSH expressions: every sign pattern on (E11, E12, E21, E22) with
/// an odd number of minus signs.
inline std::array<double, 8> chsh_variants(const Correlations &e) {
    std::array<double, 8> out{};
    std::size_t n = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
        if ((std::popcount(mask) & 1) == 0) {
            continue;
        }
        double v = 0.0;
        for (unsigned t = 0; t < 4; ++t) {
            v += ((mask >> (3 - t)) & 1U) != 0 ? -e[t] : e[t];
        }
        out[n++] = v;
    }
    return out;
}

/// Membership test for the local correlation polytope (the |E| <= 1 facets are
/// a precondition checked by fit_lhv).
inline bool is_local(const Correlations &e, double tol = kLhvTolerance) {
    const auto variants = chsh_variants(e);
    return std::all_of(variants.begin(), variants.end(),
                       [tol](double v) { return std::abs(v) <= 2.0 + tol; });
}

namespace detail {

/// Phase-one simplex for { w >= 0 : A w = b } with Bland's pivoting rule.
/// Returns weights minimizing the L1 residual; exact feasibility gives zero
/// residual.
template <std::size_t Rows, std::size_t Cols>
std::array<double, Cols> phase_one_simplex(const std::array<std::array<double, Cols>, Rows> &a,
                                           const std::array<double, Rows> &b) {
    constexpr std::size_t kWidth = Cols + Rows + 1; // columns + artificials + rhs
    constexpr double kEps = 1e-13;
    std::array<std::array<double, kWidth>, Rows> t{};
    std::array<std::size_t, Rows> basis{};
    for (std::size_t r = 0; r < Rows; ++r) {
        const double sign = b[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < Cols; ++c) {
            t[r][c] = sign * a[r][c];
        }
        t[r][Cols + r] = 1.0;
        t[r][kWidth - 1] = sign * b[r];
        basis[r] = Cols + r;
    }

    for (std::size_t iter = 0; iter < 1000; ++iter) {
        // Reduced cost of column c under objective sum(artificials) is
        // -sum_r t[r][c] over rows whose basic variable is artificial.
        std::size_t entering = kWidth;
        for (std::size_t c = 0; c + 1 < kWidth; ++c) {
            if (c >= Cols) {
                break; // artificials never re-enter
            }
            double reduced = 0.0;
            for (std::size_t r = 0; r < Rows; ++r) {
                if (basis[r] >= Cols) {
                    reduced -= t[r][c];
                }
            }
            if (reduced < -kEps) {
                entering = c;
                break;
            }
        }
        if (entering == kWidth) {
            break;
        }
        std::size_t leaving = Rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < Rows; ++r) {
            if (t[r][entering] > kEps) {
                const double ratio = t[r][kWidth - 1] / t[r][entering];
                if (ratio < best_ratio - kEps ||
                    (ratio <= best_ratio + kEps && leaving < Rows && basis[r] < basis[leaving])) {
                    best_ratio = ratio;
                    leaving = r;
                }
            }
        }
        if (leaving == Rows) {
            break; // unbounded direction cannot occur for a bounded polytope
        }
        const double pivot = t[leaving][entering];
        for (double &v : t[leaving]) {
            v /= pivot;
        }
        for (std::size_t r = 0; r < Rows; ++r) {
            if (r != leaving && t[r][entering] != 0.0) {
                const double f = t[r][entering];
                for (std::size_t c = 0; c < kWidth; ++c) {
                    t[r][c] -= f * t[leaving][c];
                }
            }
        }
        basis[leaving] = entering;
    }

    std::array<double, Cols> x{};
    for (std::size_t r = 0; r < Rows; ++r) {
        if (basis[r] < Cols) {
            x[basis[r]] = std::max(0.0, t[r][kWidth - 1]);
        }
    }
    return x;
}

} // namespace detail

/// Finds a distribution over deterministic strategies reproducing `targets`.
///
/// Feasibility is decided by the eight CHSH inequalities at `tol`; when they
/// hold, a witness model is built by linear feasibility over the 16 vertex
/// weights. Returns nullopt for non-local targets. Targets outside
/// [-1 - tol, 1 + tol] throw InputError.
inline std::optional<LhvModel> fit_lhv(const Correlations &targets, double tol = kLhvTolerance) {
    for (double e : targets) {
        if (!std::isfinite(e) || std::abs(e) > 1.0 + tol) {
            throw InputError("correlation " + std::to_string(e) + " outside [-1, 1]");
        }
    }
    if (!is_local(targets, tol)) {
        return std::nullopt;
    }

    const auto strategies = enumerate_strategies();
    std::array<std::array<double, kNumStrategies>, 5> a{};
    std::array<double, 5> b{};
    for (std::size_t k = 0; k < kNumStrategies; ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                a[2 * i + j][k] = strategies[k].a(i) * strategies[k].b(j);
            }
        }
        a[4][k] = 1.0;
    }
    for (std::size_t r = 0; r < 4; ++r) {
        b[r] = std::clamp(targets[r], -1.0, 1.0);
    }
    b[4] = 1.0;

    auto weights = detail::phase_one_simplex(a, b);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total <= 0.0) {
        throw ModelError("linear feasibility returned an empty model");
    }
    for (double &w : weights) {
        w /= total;
    }
    return LhvModel(weights);
}

/// Draws a hidden strategy by weight and returns its +-1 responses to
/// settings (i, j), i and j in {0, 1}.
inline std::pair<int, int> sample_lhv(const LhvModel &model, std::size_t i, std::size_t j, Rng &rng) {
    if (i > 1 || j > 1) {
        throw InputError("setting index must be 0 or 1");
    }
    const auto strategies = enumerate_strategies();
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t chosen = kNumStrategies - 1;
    for (std::size_t k = 0; k < kNumStrategies; ++k) {
        cumulative += model.weights()[k];
        if (u < cumulative) {
            chosen = k;
            break;
        }
    }
    // Guard against rounding leaving u beyond the last cumulative weight.
    while (model.weights()[chosen] == 0.0 && chosen > 0) {
        --chosen;
    }
    return {strategies[chosen].a(i), strategies[chosen].b(j)};
}

} // namespace bellsim
