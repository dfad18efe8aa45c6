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
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace vqesim {

/// Computational basis state; bit k is the value of qubit k. Rendered
/// qubit 0 first, so "10" has qubit 0 set.
class Bitstring {
  public:
    Bitstring() = default;
    explicit Bitstring(std::size_t n_qubits) : bits_(n_qubits, 0) {}
    explicit Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_) {
            if (b > 1) {
                throw DomainError("bitstring entries must be 0 or 1");
            }
        }
    }

    static Bitstring parse(std::string_view s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') {
                throw FormatError("bitstring must contain only 0/1: " + std::string(s));
            }
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return Bitstring(std::move(bits));
    }

    /// Basis state from an index (qubit 0 = least-significant bit).
    static Bitstring from_index(std::uint64_t index, std::size_t n_qubits) {
        Bitstring b(n_qubits);
        for (std::size_t k = 0; k < n_qubits; ++k) {
            b.bits_[k] = static_cast<std::uint8_t>((index >> k) & 1U);
        }
        return b;
    }

    [[nodiscard]] std::size_t size() const { return bits_.size(); }
    [[nodiscard]] std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
    void set(std::size_t k, bool v) { bits_.at(k) = v ? 1 : 0; }

    [[nodiscard]] std::uint64_t index() const {
        if (bits_.size() > 64) {
            throw ResourceLimitError("bitstring longer than 64 qubits has no integer index");
        }
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < bits_.size(); ++k) {
            idx |= static_cast<std::uint64_t>(bits_[k]) << k;
        }
        return idx;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) {
            s += static_cast<char>('0' + b);
        }
        return s;
    }

    friend bool operator==(const Bitstring &, const Bitstring &) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

} // namespace vqesim
