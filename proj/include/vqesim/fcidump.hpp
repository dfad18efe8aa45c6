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
 * @file fcidump.hpp
 * FCIDUMP reader.
 *
 * The header is a Fortran namelist (`&FCI ... &END` or terminated by `/`)
 * with case-insensitive keys; NORB and NELEC are required, MS2 defaults to 0
 * and ORBSYM/ISYM are accepted but ignored. Each data line is
 * `value i j k l` with 1-based indices in chemist notation (ij|kl):
 *
 *   - `i j k l` all non-zero: two-electron integral (ij|kl)
 *   - `i j 0 0`: one-electron integral h_ij
 *   - `0 0 0 0`: nuclear repulsion
 *   - `i 0 0 0`: orbital energy (ignored)
 *
 * Two-electron integrals are converted to physicist order <ik|jl> here and
 * nowhere else.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fermion.hpp"

namespace vqesim {

namespace detail {

inline std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

/// Splits namelist text into KEY -> raw value string.
inline std::map<std::string, std::string> parse_namelist(const std::string &text) {
    struct Key {
        std::string name;
        std::size_t begin; // first character of the key
        std::size_t value; // first character after '='
    };
    auto is_ident = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
    };
    std::vector<Key> keys;
    for (std::size_t eq = text.find('='); eq != std::string::npos; eq = text.find('=', eq + 1)) {
        std::size_t end = eq;
        while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1])) != 0) {
            --end;
        }
        std::size_t begin = end;
        while (begin > 0 && is_ident(text[begin - 1])) {
            --begin;
        }
        keys.push_back({text.substr(begin, end - begin), begin, eq + 1});
    }
    std::map<std::string, std::string> out;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const std::size_t stop = k + 1 < keys.size() ? keys[k + 1].begin : text.size();
        std::string v = text.substr(keys[k].value, stop - keys[k].value);
        std::replace(v.begin(), v.end(), ',', ' ');
        out[keys[k].name] = v;
    }
    return out;
}

inline int namelist_int(const std::map<std::string, std::string> &nl, const std::string &key) {
    auto it = nl.find(key);
    if (it == nl.end()) {
        throw FormatError("FCIDUMP header is missing " + key);
    }
    std::istringstream is(it->second);
    int v = 0;
    if (!(is >> v)) {
        throw FormatError("FCIDUMP header key " + key + " has no integer value");
    }
    return v;
}

inline double parse_fortran_double(std::string tok) {
    std::replace_if(tok.begin(), tok.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) {
        throw std::invalid_argument(tok);
    }
    return v;
}

} // namespace detail

[[nodiscard]] inline MolecularIntegrals load_fcidump(std::istream &in,
                                                     double consistency_tol = 1e-8) {
    std::string header;
    std::string line;
    std::size_t lineno = 0;
    bool terminated = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string up = detail::upper(line);
        auto end_pos = std::min(up.find("&END"), up.find("$END"));
        const auto trimmed_end = up.find_last_not_of(" \t\r");
        if (end_pos == std::string::npos && trimmed_end != std::string::npos &&
            up[trimmed_end] == '/') {
            end_pos = trimmed_end;
        }
        if (end_pos != std::string::npos) {
            header += up.substr(0, end_pos);
            terminated = true;
            break;
        }
        header += up + "\n";
    }
    if (!terminated) {
        throw FormatError("FCIDUMP header is not terminated by &END or /");
    }
    const auto fci = header.find("&FCI");
    if (fci != std::string::npos) {
        header.erase(0, fci + 4);
    }
    const auto nl = detail::parse_namelist(header);
    const int norb = detail::namelist_int(nl, "NORB");
    const int nelec = detail::namelist_int(nl, "NELEC");
    const int ms2 = nl.contains("MS2") ? detail::namelist_int(nl, "MS2") : 0;
    if (norb <= 0) {
        throw FormatError("FCIDUMP NORB must be positive");
    }
    const auto n = static_cast<std::size_t>(norb);

    MolecularIntegrals m = MolecularIntegrals::zeros(n, nelec);
    m.ms2 = ms2;
    std::map<std::array<int, 4>, double> seen;
    auto record = [&](std::array<int, 4> key, double v) {
        auto [it, inserted] = seen.emplace(key, v);
        if (!inserted && std::abs(it->second - v) > consistency_tol) {
            throw ConsistencyError("line " + std::to_string(lineno) +
                                   ": integral conflicts with a symmetry-equivalent entry");
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string vtok;
        if (!(ls >> vtok)) {
            continue;
        }
        double v = 0.0;
        std::array<int, 4> idx{};
        try {
            v = detail::parse_fortran_double(vtok);
        } catch (const std::exception &) {
            throw FormatError("line " + std::to_string(lineno) + ": bad value '" + vtok + "'");
        }
        if (!(ls >> idx[0] >> idx[1] >> idx[2] >> idx[3])) {
            throw FormatError("line " + std::to_string(lineno) + ": expected four indices");
        }
        for (int k : idx) {
            if (k < 0 || k > norb) {
                throw DomainError("line " + std::to_string(lineno) + ": orbital index " +
                                  std::to_string(k) + " outside 0.." + std::to_string(norb));
            }
        }
        const auto [i, j, k, l] = idx;
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            record({0, 0, 0, 0}, v);
            m.e_nuclear = v;
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            // Canonical representative of the 8-fold chemist orbit.
            std::array<int, 2> a{std::max(i, j), std::min(i, j)};
            std::array<int, 2> b{std::max(k, l), std::min(k, l)};
            if (a < b) {
                std::swap(a, b);
            }
            record({a[0], a[1], b[0], b[1]}, v);
            const std::size_t I = i - 1;
            const std::size_t J = j - 1;
            const std::size_t K = k - 1;
            const std::size_t L = l - 1;
            // (ij|kl) = <ik|jl> and its images.
            const std::array<std::array<std::size_t, 4>, 8> chem{{{I, J, K, L},
                                                                   {J, I, K, L},
                                                                   {I, J, L, K},
                                                                   {J, I, L, K},
                                                                   {K, L, I, J},
                                                                   {L, K, I, J},
                                                                   {K, L, J, I},
                                                                   {L, K, J, I}}};
            for (const auto &c : chem) {
                m.g(c[0], c[2], c[1], c[3]) = v;
            }
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            record({std::max(i, j), std::min(i, j), 0, -1}, v);
            m.h(i - 1, j - 1) = v;
            m.h(j - 1, i - 1) = v;
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            // orbital energy; not needed
        } else {
            throw FormatError("line " + std::to_string(lineno) + ": unrecognised index pattern");
        }
    }
    if (nelec <= 0 || nelec > 2 * norb) {
        throw DomainError("FCIDUMP NELEC=" + std::to_string(nelec) + " outside (0, 2*NORB]");
    }
    return m;
}

[[nodiscard]] inline MolecularIntegrals load_fcidump_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open FCIDUMP file '" + path + "'");
    }
    try {
        return load_fcidump(in);
    } catch (const FormatError &e) {
        throw FormatError(path + ": " + e.what());
    } catch (const DomainError &e) {
        throw DomainError(path + ": " + e.what());
    } catch (const ConsistencyError &e) {
        throw ConsistencyError(path + ": " + e.what());
    }
}

} // namespace vqesim
