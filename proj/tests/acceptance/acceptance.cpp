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
// Acceptance runner: one PASS/FAIL line per criterion. The exit status is
// non-zero only for failures that the host could have satisfied; checks that
// need hardware this machine lacks print FAIL with the reason but do not
// fail the run.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "oracles.hpp"

using namespace vqesim;

namespace {

constexpr double kH2Ground = -1.137270174660903;
constexpr double kH2FirstExcited = -0.538709579877;

struct Outcome {
    bool pass = false;
    std::string detail;
    bool hardware_limited = false;
};

std::string data(const std::string &name) { return oracle::data_path(name); }

PauliSum h2() { return qubit_hamiltonian(load_fcidump_file(data("h2_sto3g_0.7414.fcidump"))); }

VqeOptions tight(BackendKind kind, std::size_t max_bond = 16, std::size_t workers = 1) {
    VqeOptions o;
    o.backend = BackendConfig{kind, max_bond, kDefaultDropThreshold, workers};
    o.optimizer_options.tol_grad = 1e-8;
    o.optimizer_options.tol_energy = 1e-12;
    return o;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int run_shell(const std::string &cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json last_json_line(const std::string &text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    return nlohmann::json::parse(last);
}

Outcome resources() {
    const std::string out = "acceptance_resources.txt";
    const auto t0 = std::chrono::steady_clock::now();
    int rc = run_shell(std::string("'") + VQESIM_CLI_PATH + "' resources --fcidump '" +
                       data("h2_sto3g_0.7414.fcidump") + "' > " + out);
    const auto ucc = last_json_line(slurp(out));
    rc |= run_shell(std::string("'") + VQESIM_CLI_PATH +
                    "' resources --ansatz uccgsd --n-spatial 2 --n-electrons 2 > " + out);
    const auto gen = last_json_line(slurp(out));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = rc == 0 && ucc["n_qubits"] == 4 && ucc["n_params"] == 2 &&
                    ucc["n_cnot"] == 64 && gen["n_params"] == 5 && secs < 1.0;
    return {ok, "uccsd " + ucc["n_qubits"].dump() + "/" + ucc["n_params"].dump() + "/" +
                    ucc["n_cnot"].dump() + ", uccgsd params " + gen["n_params"].dump() + ", " +
                    fmt(secs) + " s"};
}

Outcome mps_exactness() {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<std::size_t> nq(2, 12), ng(1, 60);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = nq(rng);
        const auto b = bind_constants(oracle::random_circuit(rng, n, ng(rng)));
        const auto m = mps::evolve(mps::init(Bitstring(n), std::size_t{1} << (n / 2), 0.0), b);
        const auto v = m.to_state_vector();
        const auto s = sv::evolve(StateVector(n), b);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            worst = std::max(worst, std::abs(v[i] - s[i]));
        }
    }
    return {worst < 1e-10, "max amplitude error " + fmt(worst) + " over 50 circuits"};
}

Outcome gradients() {
    double worst_fd = 0.0;
    double worst_shift = 0.0;
    auto rel = [](const std::vector<double> &a, const std::vector<double> &b) {
        double num = 0.0, den = 1.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            num = std::max(num, std::abs(a[i] - b[i]));
            den = std::max(den, std::abs(b[i]));
        }
        return num / den;
    };
    {
        const auto h = h2();
        const auto c = uccsd_ansatz(2, 2);
        const auto ref = hf_reference(2, 4);
        const std::vector<double> theta{0.31, -0.57};
        const auto rev = reverse_gradient(c, theta, h, sv::init(ref));
        const auto fd = finite_difference_gradient(
            [&](std::span<const double> t) {
                return sv::expectation(sv::evolve(sv::init(ref), bind_circuit(c, t)), h);
            },
            theta, 1e-5);
        worst_fd = std::max(worst_fd, rel(rev, fd));
    }
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial) % 10;
        const auto h = oracle::random_sum(rng, n, 12, true);
        const auto c = oracle::random_circuit(rng, n, 30, true);
        std::vector<double> theta(c.n_params());
        for (auto &t : theta) {
            t = u(rng);
        }
        const StateVector s0(n);
        const auto rev = reverse_gradient(c, theta, h, s0);
        const auto fd = finite_difference_gradient(
            [&](std::span<const double> t) {
                return sv::expectation(sv::evolve(s0, bind_circuit(c, t)), h);
            },
            theta, 1e-5);
        worst_fd = std::max(worst_fd, rel(rev, fd));

        const auto rc = oracle::random_rotation_circuit(rng, n, 30, 4);
        std::vector<double> rt(rc.n_params());
        for (auto &t : rt) {
            t = u(rng);
        }
        const auto rrev = reverse_gradient(rc, rt, h, s0);
        const auto shift = parameter_shift_gradient(rc, rt, [&](const BoundCircuit &b) {
            return sv::expectation(sv::evolve(s0, b), h);
        });
        worst_shift = std::max(worst_shift, rel(rrev, shift.gradient));
    }
    return {worst_fd < 1e-6 && worst_shift < 1e-10,
            "reverse vs FD " + fmt(worst_fd) + ", reverse vs shift " + fmt(worst_shift)};
}

Outcome vqe_backends() {
    const auto h = h2();
    const auto c = uccsd_ansatz(2, 2);
    const auto ref = hf_reference(2, 4);
    const double exact = dense_spectrum(h, 4).front();
    const double e_sv = vqe_minimize(h, c, ref, tight(BackendKind::SV)).energy;
    const double e_mps = vqe_minimize(h, c, ref, tight(BackendKind::MPS, 16)).energy;
    const double d_sv = std::abs(e_sv - exact);
    const double d_mps = std::abs(e_mps - exact);
    return {d_sv < 1e-6 && d_mps < 1e-6, "sv error " + fmt(d_sv) + ", mps error " + fmt(d_mps)};
}

Outcome pes_scan() {
    const std::string csv = "acceptance_pes.csv";
    std::string cmd = std::string("'") + VQESIM_CLI_PATH + "' -o " + csv + " scan";
    for (const char *r : {"0.5000", "0.7414", "1.0000", "1.5000", "2.0000"}) {
        cmd += " '" + data(std::string("h2_sto3g_") + r + ".fcidump") + "'";
    }
    if (run_shell(cmd + " 2>/dev/null") != 0) {
        return {false, "scan command failed"};
    }
    std::istringstream in(slurp(csv));
    std::string line;
    std::size_t rows = 0;
    double worst = 0.0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("label", 0) == 0) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() < 3) {
            return {false, "malformed row: " + line};
        }
        worst = std::max(worst, std::abs(std::stod(f[1]) - std::stod(f[2])));
        ++rows;
    }
    return {rows == 5 && worst < 1e-5,
            std::to_string(rows) + " rows in " + csv + ", max error " + fmt(worst)};
}

Outcome vqd() {
    VqdOptions v;
    v.k = 1;
    const auto r = vqd_excited(h2(), hardware_efficient_ansatz(4, 2, Entangler::CNOT),
                               hf_reference(2, 4), tight(BackendKind::SV), v);
    const double err = std::abs(r.energies.at(1) - kH2FirstExcited);
    const double ov = r.overlaps.at(0).at(1);
    return {err < 1e-4 && ov < 1e-3, "E1 error " + fmt(err) + ", overlap " + fmt(ov)};
}

Outcome adapt() {
    const auto h = h2();
    const auto ref = hf_reference(2, 4);
    const double target = vqe_minimize(h, uccsd_ansatz(2, 2), ref, tight(BackendKind::SV)).energy;
    const auto r = adapt_vqe(h, ucc_pool(2, 2), ref, tight(BackendKind::SV));
    const double d = std::abs(r.result.energy - target);
    return {d < 1e-6 && r.selected.size() <= 2,
            std::to_string(r.selected.size()) + " operators, gap to UCCSD " + fmt(d)};
}

std::vector<Outcome> workers() {
    const auto h = h2();
    const auto c = uccsd_ansatz(2, 2);
    const auto ref = hf_reference(2, 4);
    std::vector<double> energies;
    for (std::size_t w : {1u, 2u, 4u, 8u}) {
        energies.push_back(vqe_minimize(h, c, ref, tight(BackendKind::SV, 16, w)).energy);
    }
    double spread = 0.0;
    for (double e : energies) {
        spread = std::max(spread, std::abs(e - energies[0]));
    }
    Outcome determinism{spread <= 1e-12, "energy spread over W=1,2,4,8: " + fmt(spread)};

    // Timing workload: many weight-heavy terms on a 16-qubit state.
    std::mt19937_64 rng(8);
    const auto big = oracle::random_sum(rng, 16, 400, true);
    const State s = sv::evolve(StateVector(16), bind_constants(oracle::random_circuit(rng, 16, 60)));
    auto time_with = [&](std::size_t w) {
        const auto plan = plan_partition(big, w);
        const auto t0 = std::chrono::steady_clock::now();
        volatile double sink = expectation_parallel(s, big, plan);
        (void)sink;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    const double t1 = time_with(1);
    const double t4 = time_with(4);
    const unsigned cores = std::thread::hardware_concurrency();
    Outcome speed;
    speed.pass = cores >= 4 && t4 <= 0.5 * t1;
    speed.detail = "W=4 / W=1 time ratio " + fmt(t4 / t1) + " on " + std::to_string(cores) +
                   " hardware threads";
    if (cores < 4) {
        speed.detail += " (needs at least 4 cores; not attainable on this host)";
        speed.hardware_limited = true;
    }
    return {determinism, speed};
}

Outcome property_suites() {
    const std::string dir = VQESIM_TEST_BIN_DIR;
    int failures = 0;
    std::string failed;
    for (const char *t : {"Test_Pauli", "Test_Fermion", "Test_Circuit", "Test_StateVector",
                          "Test_Adjoint", "Test_Mps", "Test_Parallel"}) {
        const int rc = run_shell("'" + dir + "/" + t + "' '[property]' --colour-mode none > /dev/null");
        if (rc != 0) {
            ++failures;
            failed += std::string(" ") + t;
        }
    }
    return {failures == 0, failures == 0 ? "all property-tagged tests pass" : "failed:" + failed};
}

} // namespace

int main() {
    int hard_failures = 0;
    auto report = [&](const std::string &id, const std::string &name, const Outcome &o,
                      double secs) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail
                  << " (" << fmt(secs) << " s)" << std::endl;
        if (!o.pass && !o.hardware_limited) {
            ++hard_failures;
        }
    };
    auto timed = [&](const std::string &id, const std::string &name,
                     const std::function<Outcome()> &f) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(id, name, o,
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };

    timed("1", "H2 UCCSD/UCCGSD resource counts", resources);
    timed("2", "MPS equals SV in the exact regime", mps_exactness);
    timed("3", "reverse-mode gradients", gradients);
    timed("4", "VQE on SV and MPS reaches the exact ground energy", vqe_backends);
    timed("5", "five-point H2 energy scan", pes_scan);
    timed("6", "VQD first excited state", vqd);
    timed("7", "ADAPT-VQE with at most two operators", adapt);
    {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Outcome> w;
        try {
            w = workers();
        } catch (const std::exception &e) {
            w = {{false, std::string("exception: ") + e.what()}, {false, "not run"}};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report("8a", "energies independent of the worker count", w[0], secs);
        report("8b", "four workers at least twice as fast as one", w[1], secs);
    }
    timed("9", "property suites", property_suites);
    return hard_failures == 0 ? 0 : 1;
}
