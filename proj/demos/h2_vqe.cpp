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
// Minimal library walk-through: load H2 integrals, build the qubit
// Hamiltonian and UCCSD circuit, and run VQE on both backends.
//
// Usage: h2_vqe <file.fcidump>
#include <iomanip>
#include <iostream>

#include "vqesim/vqesim.hpp"

int main(int argc, char **argv) {
    using namespace vqesim;
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <file.fcidump>\n";
        return 2;
    }
    try {
        const auto integrals = load_fcidump_file(argv[1]);
        const auto h = qubit_hamiltonian(integrals);
        const auto ansatz = uccsd_ansatz(integrals.n_spatial, integrals.n_electrons);
        const auto ref = hf_reference(integrals.n_electrons, ansatz.n_qubits());
        const auto res = count_resources(ansatz);

        std::cout << std::setprecision(12);
        std::cout << "qubits " << res.n_qubits << ", parameters " << res.n_params << ", CNOTs "
                  << res.n_cnot << ", Pauli terms " << h.size() << "\n";
        std::cout << "exact ground energy  " << dense_spectrum(h, ansatz.n_qubits()).front()
                  << "\n";
        std::cout << "HF energy            " << sv::expectation(sv::init(ref), h) << "\n";

        for (auto kind : {BackendKind::SV, BackendKind::MPS}) {
            VqeOptions opt;
            opt.backend.kind = kind;
            opt.backend.max_bond = 16;
            const auto r = vqe_minimize(h, ansatz, ref, opt);
            std::cout << std::left << std::setw(21) << "VQE (" + backend_name(kind) + ")" << r.energy << " after " << r.iterations << " iterations ("
                      << r.reason << ")\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
