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
 * @file commands.hpp
 * Implementation of the vqesim command-line subcommands.
 *
 * Every command writes its primary result (Pauli text, JSON, CSV) to the
 * output path when one is given and to `out` otherwise; human-readable
 * summaries go to `log`.
 */
#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vqesim/vqesim.hpp"

namespace vqesim::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kResourceLimit = 3,
    kNumerical = 4,
};

/// Configuration errors are reported with exit code 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

struct RunConfig {
    std::string fcidump;
    std::string ansatz = "uccsd"; // uccsd | uccgsd | hea
    std::size_t hea_layers = 2;
    std::string hea_entangler = "cnot"; // cnot | cu3
    std::string backend = "sv";
    std::size_t max_bond = 64;
    double svd_threshold = kDefaultDropThreshold;
    std::string optimizer = "gradient";
    double tol_energy = 1e-8;
    double tol_grad = 1e-6;
    std::size_t max_iter = 500;
    std::size_t workers = 0; // 0: VQE_WORKERS or hardware threads
    std::uint64_t seed = 7;
    std::string output;
    std::string method = "vqe"; // vqe | adapt | vqd
    std::size_t vqd_k = 1;
    double vqd_alpha = 3.0;
    std::size_t vqd_restarts = 4;
    double adapt_grad_eps = 1e-5;
    std::size_t adapt_max_ops = 10;
};

namespace detail {

template <class T>
void read_key(const nlohmann::json &j, const char *key, T &dst) {
    if (!j.contains(key)) {
        return;
    }
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

inline void require_one_of(const std::string &key, const std::string &value,
                           std::initializer_list<const char *> allowed) {
    for (const char *a : allowed) {
        if (value == a) {
            return;
        }
    }
    std::string list;
    for (const char *a : allowed) {
        list += (list.empty() ? "" : ", ") + std::string(a);
    }
    throw ConfigError("config key '" + key + "' must be one of {" + list + "}, got '" + value +
                      "'");
}

} // namespace detail

/// Applies a JSON object onto cfg, rejecting unknown keys.
inline void apply_config_json(const nlohmann::json &j, RunConfig &cfg) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known{
        "fcidump",    "ansatz",         "hea_layers", "hea_entangler", "backend",
        "max_bond",   "svd_threshold",  "optimizer",  "tol_energy",    "tol_grad",
        "max_iter",   "workers",        "seed",       "output",        "method",
        "vqd_k",      "vqd_alpha",      "vqd_restarts", "adapt_grad_eps", "adapt_max_ops"};
    for (const auto &[key, value] : j.items()) {
        if (known.count(key) == 0) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    detail::read_key(j, "fcidump", cfg.fcidump);
    detail::read_key(j, "ansatz", cfg.ansatz);
    detail::read_key(j, "hea_layers", cfg.hea_layers);
    detail::read_key(j, "hea_entangler", cfg.hea_entangler);
    detail::read_key(j, "backend", cfg.backend);
    detail::read_key(j, "max_bond", cfg.max_bond);
    detail::read_key(j, "svd_threshold", cfg.svd_threshold);
    detail::read_key(j, "optimizer", cfg.optimizer);
    detail::read_key(j, "tol_energy", cfg.tol_energy);
    detail::read_key(j, "tol_grad", cfg.tol_grad);
    detail::read_key(j, "max_iter", cfg.max_iter);
    detail::read_key(j, "workers", cfg.workers);
    detail::read_key(j, "seed", cfg.seed);
    detail::read_key(j, "output", cfg.output);
    detail::read_key(j, "method", cfg.method);
    detail::read_key(j, "vqd_k", cfg.vqd_k);
    detail::read_key(j, "vqd_alpha", cfg.vqd_alpha);
    detail::read_key(j, "vqd_restarts", cfg.vqd_restarts);
    detail::read_key(j, "adapt_grad_eps", cfg.adapt_grad_eps);
    detail::read_key(j, "adapt_max_ops", cfg.adapt_max_ops);
}

inline void load_config_file(const std::string &path, RunConfig &cfg) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    apply_config_json(j, cfg);
}

inline void validate(const RunConfig &cfg) {
    detail::require_one_of("ansatz", cfg.ansatz, {"uccsd", "uccgsd", "hea"});
    detail::require_one_of("hea_entangler", cfg.hea_entangler, {"cnot", "cu3"});
    detail::require_one_of("backend", cfg.backend, {"sv", "mps"});
    detail::require_one_of("optimizer", cfg.optimizer, {"gradient", "simplex"});
    detail::require_one_of("method", cfg.method, {"vqe", "adapt", "vqd"});
    if (cfg.max_bond < 1) {
        throw ConfigError("config key 'max_bond' must be at least 1");
    }
    if (!(cfg.svd_threshold >= 0.0) || !(cfg.tol_energy > 0.0) || !(cfg.tol_grad > 0.0)) {
        throw ConfigError("thresholds and tolerances must be positive");
    }
    if (!(cfg.vqd_alpha >= 0.0) || cfg.vqd_restarts < 1) {
        throw ConfigError("vqd_alpha must be non-negative and vqd_restarts at least 1");
    }
}

// ---------------------------------------------------------------------------
// Shared helpers

inline void write_primary(const RunConfig &cfg, std::ostream &out, const std::string &text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output);
    if (!f) {
        throw ConfigError("cannot write output file '" + cfg.output + "'");
    }
    f << text;
}

struct Problem {
    MolecularIntegrals integrals;
    PauliSum hamiltonian;
    Circuit ansatz;
    Bitstring reference;
};

[[nodiscard]] inline Circuit build_ansatz(const RunConfig &cfg, std::size_t n_spatial,
                                          int n_electrons) {
    if (cfg.ansatz == "hea") {
        return hardware_efficient_ansatz(2 * n_spatial, cfg.hea_layers,
                                         cfg.hea_entangler == "cu3" ? Entangler::CU3
                                                                    : Entangler::CNOT);
    }
    return uccsd_ansatz(n_spatial, n_electrons, cfg.ansatz == "uccgsd");
}

[[nodiscard]] inline Problem load_problem(const RunConfig &cfg) {
    if (cfg.fcidump.empty()) {
        throw ConfigError("no FCIDUMP file given (config key 'fcidump' or --fcidump)");
    }
    Problem p;
    p.integrals = load_fcidump_file(cfg.fcidump);
    p.hamiltonian = qubit_hamiltonian(p.integrals);
    p.ansatz = build_ansatz(cfg, p.integrals.n_spatial, p.integrals.n_electrons);
    p.reference = hf_reference(p.integrals.n_electrons, 2 * p.integrals.n_spatial);
    return p;
}

[[nodiscard]] inline VqeOptions vqe_options(const RunConfig &cfg) {
    VqeOptions o;
    o.backend.kind = parse_backend(cfg.backend);
    o.backend.max_bond = cfg.max_bond;
    o.backend.svd_threshold = cfg.svd_threshold;
    o.backend.workers = resolve_workers(cfg.workers);
    o.optimizer = parse_optimizer(cfg.optimizer);
    o.optimizer_options.tol_energy = cfg.tol_energy;
    o.optimizer_options.tol_grad = cfg.tol_grad;
    o.optimizer_options.max_iter = cfg.max_iter;
    return o;
}

[[nodiscard]] inline nlohmann::json result_json(const VqeResult &r) {
    nlohmann::json history = nlohmann::json::array();
    for (const auto &h : r.history) {
        nlohmann::json e{{"iteration", h.iteration}, {"energy", h.energy}};
        e["grad_norm"] = h.grad_norm ? nlohmann::json(*h.grad_norm) : nlohmann::json(nullptr);
        history.push_back(std::move(e));
    }
    nlohmann::json j{{"energy", r.energy},
                     {"theta", r.theta},
                     {"iterations", r.iterations},
                     {"history", history},
                     {"converged", r.converged},
                     {"backend", backend_name(r.backend)},
                     {"wall_time_s", r.wall_time_s}};
    if (r.backend == BackendKind::MPS) {
        j["truncation_log"] = r.truncation_log;
    }
    if (r.gradient_fallback) {
        j["gradient_fallback"] = "finite_difference";
    }
    return j;
}

[[nodiscard]] inline double exact_ground(const PauliSum &h, std::size_t n_qubits) {
    return dense_spectrum(h, n_qubits).front();
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_transform(const std::string &fcidump, const RunConfig &cfg, std::ostream &out,
                         std::ostream &log) {
    const auto m = load_fcidump_file(fcidump);
    const auto h = simplify(qubit_hamiltonian(m));
    std::ostringstream text;
    write_pauli_sum(text, h);
    write_primary(cfg, out, text.str());
    log << "terms: " << h.size() << "\nqubits: " << 2 * m.n_spatial << "\n";
    return kOk;
}

struct ResourceRequest {
    std::optional<std::size_t> n_spatial;
    std::optional<int> n_electrons;
    std::optional<std::size_t> n_qubits; // hea only
};

inline int cmd_resources(const RunConfig &cfg, const ResourceRequest &req, std::ostream &out,
                         std::ostream &log) {
    validate(cfg);
    Circuit c;
    std::string system;
    if (cfg.ansatz == "hea") {
        std::size_t n = 0;
        if (req.n_qubits) {
            n = *req.n_qubits;
        } else if (!cfg.fcidump.empty()) {
            n = 2 * load_fcidump_file(cfg.fcidump).n_spatial;
        } else {
            throw ConfigError("hea resources need --n-qubits or an FCIDUMP file");
        }
        c = hardware_efficient_ansatz(n, cfg.hea_layers,
                                      cfg.hea_entangler == "cu3" ? Entangler::CU3
                                                                 : Entangler::CNOT);
        system = std::to_string(n) + " qubits";
    } else {
        std::size_t ns = 0;
        int ne = 0;
        if (req.n_spatial && req.n_electrons) {
            ns = *req.n_spatial;
            ne = *req.n_electrons;
            system = std::to_string(ns) + " orbitals, " + std::to_string(ne) + " electrons";
        } else if (!cfg.fcidump.empty()) {
            const auto m = load_fcidump_file(cfg.fcidump);
            ns = m.n_spatial;
            ne = m.n_electrons;
            system = cfg.fcidump;
        } else {
            throw ConfigError("UCC resources need an FCIDUMP file or --n-spatial/--n-electrons");
        }
        c = uccsd_ansatz(ns, ne, cfg.ansatz == "uccgsd");
    }
    const auto r = count_resources(c);
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"ansatz", cfg.ansatz},
                     {"system", system},
                     {"n_qubits", r.n_qubits},
                     {"n_params", r.n_params},
                     {"n_cnot", r.n_cnot},
                     {"n_gates", r.n_gates},
                     {"depth", r.depth}};
    std::ostringstream table;
    table << std::left << std::setw(8) << "ansatz" << std::setw(8) << "qubits" << std::setw(8)
          << "params" << std::setw(8) << "cnots" << std::setw(8) << "gates" << "depth\n"
          << std::setw(8) << cfg.ansatz << std::setw(8) << r.n_qubits << std::setw(8)
          << r.n_params << std::setw(8) << r.n_cnot << std::setw(8) << r.n_gates << r.depth
          << "\n";
    if (cfg.output.empty()) {
        out << table.str() << j.dump() << "\n";
    } else {
        write_primary(cfg, out, j.dump(2) + "\n");
        log << table.str();
    }
    return kOk;
}

inline int cmd_run_vqe(const RunConfig &cfg, std::ostream &out, std::ostream &log) {
    validate(cfg);
    const auto p = load_problem(cfg);
    const auto opt = vqe_options(cfg);
    nlohmann::json j;
    if (cfg.method == "adapt") {
        if (cfg.ansatz == "hea") {
            throw ConfigError("method 'adapt' builds its own ansatz from a UCC pool; use "
                              "ansatz uccsd or uccgsd");
        }
        const auto pool =
            ucc_pool(p.integrals.n_spatial, p.integrals.n_electrons, cfg.ansatz == "uccgsd");
        const auto a = adapt_vqe(p.hamiltonian, pool, p.reference, opt, cfg.adapt_grad_eps,
                                 cfg.adapt_max_ops);
        j = result_json(a.result);
        nlohmann::json ops = nlohmann::json::array();
        for (auto idx : a.selected) {
            ops.push_back(pool.operators[idx].label);
        }
        j["selected_operators"] = ops;
        j["selection_gradients"] = a.selection_gradients;
    } else if (cfg.method == "vqd") {
        VqdOptions v;
        v.k = cfg.vqd_k;
        v.alpha = cfg.vqd_alpha;
        v.restarts = cfg.vqd_restarts;
        v.seed = cfg.seed;
        const auto r = vqd_excited(p.hamiltonian, p.ansatz, p.reference, opt, v);
        j = result_json(r.levels.front());
        nlohmann::json levels = nlohmann::json::array();
        double wall = 0.0;
        for (const auto &l : r.levels) {
            levels.push_back(result_json(l));
            wall += l.wall_time_s;
        }
        j["wall_time_s"] = wall;
        j["energies"] = r.energies;
        j["levels"] = levels;
        j["overlaps"] = r.overlaps;
        j["ordering_warning"] = r.ordering_warning;
        if (r.ordering_warning) {
            log << "warning: VQD energies are not ascending; the ansatz may be too shallow\n";
        }
    } else {
        j = result_json(vqe_minimize(p.hamiltonian, p.ansatz, p.reference, opt));
    }
    j["schema_version"] = kSchemaVersion;
    j["method"] = cfg.method;
    j["ansatz"] = cfg.ansatz;
    write_primary(cfg, out, j.dump(2) + "\n");
    log << "energy: " << std::setprecision(12) << j["energy"].get<double>() << "\n";
    return kOk;
}

namespace detail {

inline std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

} // namespace detail

/// One CSV row per FCIDUMP file. A sidecar `<file>.meta.json` may supply
/// `label` and a reference energy (`fci_energy`).
inline int cmd_scan(const std::vector<std::string> &files, RunConfig cfg, std::ostream &out,
                    std::ostream &log) {
    if (files.empty()) {
        throw ConfigError("scan needs at least one FCIDUMP file");
    }
    validate(cfg);
    std::ostringstream csv;
    csv << "# schema_version=" << kSchemaVersion << "\n";
    csv << "label,energy,exact_energy,reference_energy,converged\n";
    const auto opt = vqe_options(cfg);
    for (const auto &file : files) {
        cfg.fcidump = file;
        const auto p = load_problem(cfg);
        std::string label = file;
        std::optional<double> reference;
        if (std::ifstream meta(file + ".meta.json"); meta) {
            try {
                nlohmann::json m;
                meta >> m;
                label = m.value("label", label);
                if (m.contains("fci_energy") && m["fci_energy"].is_number()) {
                    reference = m["fci_energy"].get<double>();
                }
            } catch (const nlohmann::json::exception &e) {
                throw FormatError(file + ".meta.json: " + e.what());
            }
        }
        const auto r = vqe_minimize(p.hamiltonian, p.ansatz, p.reference, opt);
        const double exact = exact_ground(p.hamiltonian, p.ansatz.n_qubits());
        csv << detail::csv_field(label) << "," << detail::csv_number(r.energy) << ","
            << detail::csv_number(exact) << ","
            << (reference ? detail::csv_number(*reference) : std::string()) << ","
            << (r.converged ? "true" : "false") << "\n";
        log << label << ": " << std::setprecision(10) << r.energy << " (exact " << exact << ")\n";
    }
    write_primary(cfg, out, csv.str());
    return kOk;
}

/// Lowest eigenvalues of a Pauli-sum text file or an FCIDUMP.
inline int cmd_exact(const std::string &file, std::size_t k, const RunConfig &cfg,
                     std::ostream &out, std::ostream &log) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot open '" + file + "'");
    }
    std::string head;
    std::getline(in, head);
    in.seekg(0);
    PauliSum h;
    std::size_t n = 0;
    if (head.find("&FCI") != std::string::npos || head.find("$FCI") != std::string::npos) {
        const auto m = load_fcidump_file(file);
        h = qubit_hamiltonian(m);
        n = 2 * m.n_spatial;
    } else {
        try {
            h = parse_pauli_sum(in);
        } catch (const FormatError &e) {
            throw FormatError(file + ": " + e.what());
        }
        n = std::max<std::size_t>(1, h.min_qubits());
    }
    const auto ev = lowest_eigenvalues(h, n, k == 0 ? std::size_t{1} << n : k);
    nlohmann::json j{{"schema_version", kSchemaVersion}, {"n_qubits", n}, {"eigenvalues", ev}};
    write_primary(cfg, out, j.dump(2) + "\n");
    log << "ground: " << std::setprecision(12) << ev.front() << "\n";
    return kOk;
}

/// Compares reverse-mode, parameter-shift and central finite-difference
/// gradients at a seeded random parameter vector.
inline int cmd_gradcheck(const RunConfig &cfg, std::ostream &out, std::ostream &log) {
    validate(cfg);
    const auto p = load_problem(cfg);
    const auto opt = vqe_options(cfg);
    const std::size_t np = p.ansatz.n_params();
    std::vector<double> theta(np);
    const CounterRng rng(cfg.seed);
    for (std::size_t i = 0; i < np; ++i) {
        theta[i] = 2.0 * rng.uniform(i) - 1.0;
    }
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"backend", cfg.backend},
                     {"n_params", np},
                     {"theta", theta}};
    if (np == 0) {
        j["report"] = nlohmann::json::object();
        write_primary(cfg, out, j.dump(2) + "\n");
        log << "no parameters\n";
        return kOk;
    }
    const auto plan = plan_partition(p.hamiltonian, opt.backend.workers);
    auto energy_of = [&](const BoundCircuit &b) {
        return expectation_parallel(prepare_state(opt.backend, p.reference, b), p.hamiltonian,
                                    plan);
    };
    const auto fd = finite_difference_gradient(
        [&](std::span<const double> t) { return energy_of(bind_circuit(p.ansatz, t)); }, theta,
        1e-5);
    const auto shift = parameter_shift_gradient(p.ansatz, theta, energy_of);
    auto max_delta = [](const std::vector<double> &a, const std::vector<double> &b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m = std::max(m, std::abs(a[i] - b[i]));
        }
        return m;
    };
    nlohmann::json report{{"finite_difference", fd},
                          {"parameter_shift", shift.gradient},
                          {"shift_used_finite_difference", shift.used_finite_difference},
                          {"max_abs_shift_minus_fd", max_delta(shift.gradient, fd)}};
    if (opt.backend.kind == BackendKind::SV) {
        const auto rev =
            reverse_gradient(p.ansatz, theta, p.hamiltonian, sv::init(p.reference));
        report["reverse"] = rev;
        report["max_abs_reverse_minus_fd"] = max_delta(rev, fd);
        report["max_abs_reverse_minus_shift"] = max_delta(rev, shift.gradient);
    } else {
        report["reverse"] = nullptr;
        report["max_abs_reverse_minus_fd"] = nullptr;
        report["max_abs_reverse_minus_shift"] = nullptr;
    }
    j["report"] = report;
    write_primary(cfg, out, j.dump(2) + "\n");
    log << "max |shift - fd| = " << report["max_abs_shift_minus_fd"].get<double>() << "\n";
    if (opt.backend.kind == BackendKind::SV) {
        log << "max |reverse - fd| = " << report["max_abs_reverse_minus_fd"].get<double>()
            << "\nmax |reverse - shift| = "
            << report["max_abs_reverse_minus_shift"].get<double>() << "\n";
    }
    return kOk;
}

/// Maps library exceptions onto the documented exit codes.
[[nodiscard]] inline int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ResourceLimitError *>(&e) != nullptr) {
        return kResourceLimit;
    }
    if (dynamic_cast<const NumericalError *>(&e) != nullptr) {
        return kNumerical;
    }
    if (dynamic_cast<const Error *>(&e) != nullptr) {
        return kUsage;
    }
    return 1;
}

} // namespace vqesim::cli
