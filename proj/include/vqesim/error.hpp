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
 * @file error.hpp
 * Exception hierarchy shared by every module. The CLI maps each family to a
 * process exit code.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace vqesim {

/// Base class of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (FCIDUMP, Pauli-sum files, QASM, config).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Argument outside the operation's domain (index out of range, wrong size).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Inputs that contradict each other (e.g. asymmetric integral duplicates).
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// Problem too large for the requested representation.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

/// Operation invoked on an object in the wrong state (e.g. unbound circuit).
class StateError : public Error {
  public:
    using Error::Error;
};

/// Non-finite energies or other numerical breakdowns.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Requested feature not supported for this input (e.g. 3-qubit gates on MPS).
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

} // namespace vqesim
