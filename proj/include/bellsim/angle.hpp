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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace bellsim {

inline constexpr double kPi = std::numbers::pi;

/// Maps any real angle onto [-pi, pi]. Values already inside the interval,
/// including both endpoints, are returned unchanged.
inline double wrap_angle(double angle) {
    if (angle >= -kPi && angle <= kPi) {
        return angle;
    }
    double wrapped = std::remainder(angle, 2.0 * kPi);
    if (wrapped < -kPi) {
        wrapped += 2.0 * kPi;
    } else if (wrapped > kPi) {
        wrapped -= 2.0 * kPi;
    }
    return wrapped;
}

namespace detail {

inline bool parse_positive_int(std::string_view text, std::uint64_t &out) {
    if (text.empty()) {
        return false;
    }
    const auto *first = text.data();
    const auto *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && out > 0;
}

} // namespace detail

/// Parses an angle literal in radians.
///
/// Accepted forms: a plain decimal literal (`0.785`, `-1e-3`), or a pi token
/// `[sign][k[*]]pi[/d]` with positive integers k and d (`pi`, `-pi/4`,
/// `3pi/4`, `-3*pi/4`). Returns nullopt for anything else.
inline std::optional<double> parse_angle(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }

    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        // Decimal literal. from_chars does not take a leading '+'.
        std::string_view digits = text;
        if (digits.front() == '+') {
            digits.remove_prefix(1);
        }
        if (digits.empty() || digits.front() == '+') {
            return std::nullopt;
        }
        double value = 0.0;
        const auto *last = digits.data() + digits.size();
        auto [ptr, ec] = std::from_chars(digits.data(), last, value,
                                         std::chars_format::general);
        if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
            return std::nullopt;
        }
        return value;
    }

    std::string_view head = text.substr(0, pi_pos);
    std::string_view tail = text.substr(pi_pos + 2);

    double sign = 1.0;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
        sign = head.front() == '-' ? -1.0 : 1.0;
        head.remove_prefix(1);
    }
    if (!head.empty() && head.back() == '*') {
        head.remove_suffix(1);
        if (head.empty()) {
            return std::nullopt;
        }
    }
    std::uint64_t multiplier = 1;
    if (!head.empty() && !detail::parse_positive_int(head, multiplier)) {
        return std::nullopt;
    }

    std::uint64_t divisor = 1;
    if (!tail.empty()) {
        if (tail.front() != '/') {
            return std::nullopt;
        }
        tail.remove_prefix(1);
        if (!detail::parse_positive_int(tail, divisor)) {
            return std::nullopt;
        }
    }
    return sign * (static_cast<double>(multiplier) * kPi) /
           static_cast<double>(divisor);
}

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_angle(double value) {
    if (value == 0.0) {
        return "0";
    }
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                   value);
    return std::string(buffer.data(), ptr);
}

/// Fixed-point text with `digits` decimals; negative zero prints as zero.
inline std::string format_fixed(double value, int digits) {
    std::array<char, 64> buffer{};
    auto [ptr, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                      std::chars_format::fixed, digits);
    std::string text(buffer.data(), ptr);
    if (text.front() == '-' &&
        text.find_first_not_of("-0.") == std::string::npos) {
        text.erase(0, 1);
    }
    return text;
}

} // namespace bellsim
