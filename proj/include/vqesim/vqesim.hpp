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
 * @file vqesim.hpp
 * Umbrella header.
 */
#pragma once

#include "adjoint.hpp"
#include "ansatz.hpp"
#include "backend.hpp"
#include "bitstring.hpp"
#include "circuit.hpp"
#include "error.hpp"
#include "fcidump.hpp"
#include "fermion.hpp"
#include "gates.hpp"
#include "gradient.hpp"
#include "linalg.hpp"
#include "mps.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "pauli.hpp"
#include "pauli_io.hpp"
#include "qasm.hpp"
#include "rng.hpp"
#include "statevector.hpp"
#include "vqe.hpp"
