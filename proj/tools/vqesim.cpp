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
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace vqesim;
using namespace vqesim::cli;

namespace {

/// Flag values captured before the config file is read; set flags win.
struct Overrides {
    std::string config;
    std::optional<std::string> fcidump, ansatz, hea_entangler, backend, optimizer, method;
    std::optional<std::size_t> hea_layers, max_bond, max_iter, vqd_k;
    std::optional<double> svd_threshold, tol_energy, tol_grad, vqd_alpha;
};

void add_run_options(CLI::App *cmd, Overrides &o) {
    cmd->add_option("--config", o.config, "JSON run configuration");
    cmd->add_option("--fcidump", o.fcidump, "FCIDUMP integral file");
    cmd->add_option("--ansatz", o.ansatz, "uccsd | uccgsd | hea");
    cmd->add_option("--hea-layers", o.hea_layers, "hardware-efficient layers");
    cmd->add_option("--hea-entangler", o.hea_entangler, "cnot | cu3");
    cmd->add_option("--backend", o.backend, "sv | mps");
    cmd->add_option("--max-bond", o.max_bond, "MPS bond-dimension cap");
    cmd->add_option("--svd-threshold", o.svd_threshold, "MPS relative singular-value cutoff");
    cmd->add_option("--optimizer", o.optimizer, "gradient | simplex");
    cmd->add_option("--tol-energy", o.tol_energy, "energy-change tolerance");
    cmd->add_option("--tol-grad", o.tol_grad, "gradient infinity-norm tolerance");
    cmd->add_option("--max-iter", o.max_iter, "optimizer iteration cap");
    cmd->add_option("--method", o.method, "vqe | adapt | vqd");
    cmd->add_option("--vqd-k", o.vqd_k, "VQD excited levels");
    cmd->add_option("--vqd-alpha", o.vqd_alpha, "VQD overlap penalty (hartree)");
}

template <class T>
void take(const std::optional<T> &src, T &dst) {
    if (src) {
        dst = *src;
    }
}

RunConfig resolve(const Overrides &o, const std::optional<std::size_t> &workers,
                  const std::optional<std::uint64_t> &seed, const std::optional<std::string> &output) {
    RunConfig cfg;
    if (!o.config.empty()) {
        load_config_file(o.config, cfg);
    }
    take(o.fcidump, cfg.fcidump);
    take(o.ansatz, cfg.ansatz);
    take(o.hea_layers, cfg.hea_layers);
    take(o.hea_entangler, cfg.hea_entangler);
    take(o.backend, cfg.backend);
    take(o.max_bond, cfg.max_bond);
    take(o.svd_threshold, cfg.svd_threshold);
    take(o.optimizer, cfg.optimizer);
    take(o.tol_energy, cfg.tol_energy);
    take(o.tol_grad, cfg.tol_grad);
    take(o.max_iter, cfg.max_iter);
    take(o.method, cfg.method);
    take(o.vqd_k, cfg.vqd_k);
    take(o.vqd_alpha, cfg.vqd_alpha);
    take(workers, cfg.workers);
    take(seed, cfg.seed);
    take(output, cfg.output);
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"vqesim: variational quantum eigensolver simulator"};
    app.require_subcommand(1);

    std::optional<std::size_t> workers;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    app.add_option("--workers", workers, "expectation workers (default: $VQE_WORKERS or cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed");
    app.add_option("-o,--output", output, "write the result here instead of stdout");

    Overrides o;

    std::string transform_file;
    auto *transform = app.add_subcommand("transform", "FCIDUMP -> qubit Hamiltonian (Pauli text)");
    transform->add_option("fcidump", transform_file, "FCIDUMP file")->required();

    ResourceRequest req;
    auto *resources = app.add_subcommand("resources", "qubit, parameter and CNOT counts");
    add_run_options(resources, o);
    resources->add_option("--n-spatial", req.n_spatial, "spatial orbitals (instead of FCIDUMP)");
    resources->add_option("--n-electrons", req.n_electrons, "electrons (instead of FCIDUMP)");
    resources->add_option("--n-qubits", req.n_qubits, "register size for hea");

    auto *run = app.add_subcommand("run-vqe", "run VQE, ADAPT-VQE or VQD and emit JSON");
    add_run_options(run, o);

    std::vector<std::string> scan_files;
    auto *scan = app.add_subcommand("scan", "VQE over several FCIDUMP files, CSV output");
    add_run_options(scan, o);
    scan->add_option("files", scan_files, "FCIDUMP files, one per geometry");

    std::string exact_file;
    std::size_t exact_k = 4;
    auto *exact = app.add_subcommand("exact", "lowest eigenvalues by dense diagonalisation");
    exact->add_option("file", exact_file, "Pauli-sum text file or FCIDUMP")->required();
    exact->add_option("-k,--count", exact_k, "number of eigenvalues (0 = all)");

    auto *gradcheck = app.add_subcommand("gradcheck", "compare gradient methods at random theta");
    add_run_options(gradcheck, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        const RunConfig cfg = resolve(o, workers, seed, output);
        if (*transform) {
            return cmd_transform(transform_file, cfg, std::cout, std::cerr);
        }
        if (*resources) {
            return cmd_resources(cfg, req, std::cout, std::cerr);
        }
        if (*run) {
            return cmd_run_vqe(cfg, std::cout, std::cerr);
        }
        if (*scan) {
            return cmd_scan(scan_files, cfg, std::cout, std::cerr);
        }
        if (*exact) {
            return cmd_exact(exact_file, exact_k, cfg, std::cout, std::cerr);
        }
        if (*gradcheck) {
            return cmd_gradcheck(cfg, std::cout, std::cerr);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kUsage;
}
