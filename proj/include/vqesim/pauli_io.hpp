// Copyright 2026 The vqesim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file pauli_io.hpp
 * Line-oriented text format for Pauli sums:
 *
 *     # comment
 *     <real> [<imag>] <AXIS><index> <AXIS><index> ...
 *
 * AXIS is one of X, Y, Z. A line without operators is the identity.
 */
#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pauli.hpp"

namespace vqesim {

namespace detail {
inline bool parse_double(const std::string &tok, double &out) {
    if (tok.empty()) {
        return false;
    }
    const char first = tok.front();
    if (first == 'X' || first == 'Y' || first == 'Z' || first == 'x' || first == 'y' ||
        first == 'z') {
        return false;
    }
    char *end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size();
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace detail

[[nodiscard]] inline PauliSum parse_pauli_sum(std::istream &in) {
    PauliSum out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        auto fail = [&](const std::string &why) {
            throw FormatError("line " + std::to_string(lineno) + ": " + why);
        };
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        double re = 0.0;
        if (!detail::parse_double(tok, re)) {
            fail("expected a real coefficient, got '" + tok + "'");
        }
        double im = 0.0;
        std::vector<PauliString::Entry> entries;
        bool first_op = true;
        while (ls >> tok) {
            if (first_op && detail::parse_double(tok, im)) {
                first_op = false;
                continue;
            }
            first_op = false;
            PauliAxis axis{};
            switch (tok.front()) {
            case 'X':
                axis = PauliAxis::X;
                break;
            case 'Y':
                axis = PauliAxis::Y;
                break;
            case 'Z':
                axis = PauliAxis::Z;
                break;
            default:
                fail("bad operator token '" + tok + "'");
            }
            std::uint32_t idx = 0;
            const char *b = tok.data() + 1;
            const char *e = tok.data() + tok.size();
            auto [ptr, ec] = std::from_chars(b, e, idx);
            if (b == e || ec != std::errc{} || ptr != e) {
                fail("bad qubit index in '" + tok + "'");
            }
            if (!entries.empty() && idx <= entries.back().first) {
                fail(idx == entries.back().first
                         ? "duplicate qubit index " + std::to_string(idx)
                         : "qubit indices must be ascending");
            }
            entries.emplace_back(idx, axis);
        }
        try {
            out.add(complex_t{re, im}, PauliString(std::move(entries)));
        } catch (const DomainError &e) {
            fail(e.what());
        }
    }
    return out;
}

[[nodiscard]] inline PauliSum parse_pauli_sum(const std::string &text) {
    std::istringstream in(text);
    return parse_pauli_sum(in);
}

/// Writes one term per line; the imaginary field is emitted only when non-zero.
inline void write_pauli_sum(std::ostream &out, const PauliSum &s) {
    for (const auto &t : s.terms()) {
        out << detail::format_double(t.coefficient.real());
        if (t.coefficient.imag() != 0.0) {
            out << ' ' << detail::format_double(t.coefficient.imag());
        }
        if (!t.string.is_identity()) {
            out << ' ' << t.string.to_string();
        }
        out << '\n';
    }
}

} // namespace vqesim
